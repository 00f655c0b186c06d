#!/usr/bin/env python3
"""Seed a disposable backend for the console's integration tests.

Writes a dataset, a trained model artifact, and a snapshot store containing a
central admin, a verified citizen, one unused employee credential, and one
pending Khulna complaint. Prints a JSON description for the test harness.
"""

import base64
import io
import json
import os
import sys

from PIL import Image

from citysolution.accounts import RecordingMailer
from citysolution.api.config import ApiConfig
from citysolution.api.context import build_context
from citysolution.classifier import load_labeled_directory, save_model, train_baseline
from citysolution.geo import GeoPoint

PASSWORD = "password123"
CLASS_COLORS = {
    "DamagedRoad": (128, 128, 128),
    "Flood": (0, 0, 255),
    "Trash": (0, 255, 0),
    "HomelessPeople": (255, 0, 0),
}


def png(rgb, size=(32, 32)) -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", size, rgb).save(buf, format="PNG")
    return buf.getvalue()


def main() -> None:
    root = os.path.abspath(sys.argv[1])
    port = int(sys.argv[2]) if len(sys.argv) > 2 else 8745
    os.makedirs(root, exist_ok=True)

    dataset = os.path.join(root, "dataset")
    for label, rgb in CLASS_COLORS.items():
        os.makedirs(os.path.join(dataset, label), exist_ok=True)
        for i in range(4):
            with open(os.path.join(dataset, label, f"{i}.png"), "wb") as fh:
                fh.write(png(rgb))

    model_path = os.path.join(root, "model.json")
    save_model(train_baseline(load_labeled_directory(dataset)), model_path)

    snapshot_path = os.path.join(root, "store.snap")
    config = ApiConfig(port=port, model_path=model_path, snapshot_path=snapshot_path)
    mailer = RecordingMailer()
    ctx = build_context(config, mailer=mailer)

    admin = ctx.accounts.create_central_admin("admin@example.org", PASSWORD, "Seed Admin")
    citizen = ctx.accounts.register_citizen("citizen@example.org", PASSWORD, "Seed Citizen", "en")
    ctx.accounts.verify_email(mailer.outbox[-1].params[0])
    _, payload = ctx.credentials.generate(admin.id, "KCC-100", "Seed", "Employee", "Khulna")
    complaint = ctx.complaints.submit_complaint(
        citizen.id, png(CLASS_COLORS["Trash"]), GeoPoint(22.8456, 89.5403), "seeded trash pile"
    )

    config_path = os.path.join(root, "config.json")
    with open(config_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "host": "127.0.0.1",
                "port": port,
                "model_path": model_path,
                "snapshot_path": snapshot_path,
            },
            fh,
        )

    print(
        json.dumps(
            {
                "configPath": config_path,
                "port": port,
                "adminEmail": "admin@example.org",
                "citizenEmail": "citizen@example.org",
                "password": PASSWORD,
                "credentialPayload": payload,
                "seededComplaintId": complaint.id,
                "greenImageBase64": base64.b64encode(png(CLASS_COLORS["Trash"])).decode("ascii"),
            }
        )
    )


if __name__ == "__main__":
    main()
