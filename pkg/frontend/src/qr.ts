/** Renders the credential payload text as a QR image, client-side only.
 * SVG output avoids any canvas dependency. */

import QRCode from "qrcode";

export async function qrSvg(payloadText: string): Promise<string> {
  return QRCode.toString(payloadText, { type: "svg", errorCorrectionLevel: "M", margin: 1 });
}
