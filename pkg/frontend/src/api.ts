/** Typed client for the platform API. Every business decision round-trips
 * through the server; this module only moves JSON. */

import type { Language } from "./i18n";

export interface LocationInput {
  latitude?: number;
  longitude?: number;
  source: "Auto" | "Manual";
  manual_text?: string;
}

export interface Complaint {
  id: string;
  submitter_id: string;
  image_ref: string;
  category: string;
  category_source: string;
  confidence: number | null;
  status: string;
  city: string;
  location: { latitude: number | null; longitude: number | null; source: string; manual_text: string | null };
  note: string | null;
  created_at: string;
  updated_at: string;
  revision: number;
}

export interface NotificationItem {
  id: string;
  kind: string;
  complaint_id: string | null;
  message: string;
  read: boolean;
  created_at: string;
}

export interface SeriesPoint {
  label_key: string;
  value: number;
}

export interface Series {
  scope: string;
  kind: "status" | "category";
  points: SeriesPoint[];
}

export interface Account {
  id: string;
  role: string;
  email: string;
  display_name: string;
  city: string | null;
  active: boolean;
  language: string;
  created_at: string;
}

export interface LoginResult {
  token: string;
  account_id: string;
  role: string;
  city: string | null;
  expires_at: string;
}

export interface CredentialResult {
  credential: {
    employee_id: string;
    first_name: string;
    last_name: string;
    city: string;
    used: boolean;
  };
  payload: string;
}

/** Server rejected the request; carries the stable code and localized text. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

/** fetch itself failed: offline, DNS, refused. Drafts hinge on this. */
export class NetworkError extends Error {}

type AuthSource = () => { token: string | null; language: Language };

export class ApiClient {
  constructor(
    private baseUrl: string,
    private auth: AuthSource,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const { token, language } = this.auth();
    const headers: Record<string, string> = { "Accept-Language": language };
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (token) headers["Authorization"] = `Bearer ${token}`;

    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new NetworkError(String(cause));
    }
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const error = (payload as { error?: { code?: string; message?: string } }).error ?? {};
      throw new ApiError(response.status, error.code ?? "Unknown", error.message ?? response.statusText);
    }
    return payload as T;
  }

  // -- sessions ------------------------------------------------------------

  registerCitizen(email: string, password: string, displayName: string, language: Language) {
    return this.request<{ account: Account }>("POST", "/api/register/citizen", {
      email,
      password,
      display_name: displayName,
      language,
    });
  }

  verifyEmail(token: string) {
    return this.request<{ account: Account }>("POST", "/api/verify-email", { token });
  }

  registerEmployee(payload: string, email: string, password: string, language: Language) {
    return this.request<{ account: Account }>("POST", "/api/register/employee", {
      payload,
      email,
      password,
      language,
    });
  }

  login(email: string, password: string) {
    return this.request<LoginResult>("POST", "/api/login", { email, password });
  }

  // -- complaints -------------------------------------------------------------

  submitComplaint(imageBase64: string, location: LocationInput, note: string | null) {
    return this.request<{ complaint: Complaint }>("POST", "/api/complaints", {
      image_base64: imageBase64,
      location,
      note,
    });
  }

  listComplaints(filters: { city?: string; status?: string; category?: string } = {}) {
    const params = new URLSearchParams();
    if (filters.city) params.set("city", filters.city);
    if (filters.status) params.set("status", filters.status);
    if (filters.category) params.set("category", filters.category);
    const query = params.toString();
    return this.request<{ complaints: Complaint[] }>(
      "GET",
      `/api/complaints${query ? `?${query}` : ""}`,
    );
  }

  updateStatus(id: string, status: string, feedback?: string) {
    return this.request<{ event: unknown }>("POST", `/api/complaints/${id}/status`, {
      status,
      feedback,
    });
  }

  updateCategory(id: string, category: string) {
    return this.request<{ event: unknown }>("POST", `/api/complaints/${id}/category`, { category });
  }

  markFake(id: string) {
    return this.request<{ event: unknown }>("POST", `/api/complaints/${id}/fake`, {});
  }

  sendFeedback(id: string, text: string) {
    return this.request<{ event: unknown }>("POST", `/api/complaints/${id}/feedback`, { text });
  }

  mapLink(id: string) {
    return this.request<{ url: string }>("GET", `/api/complaints/${id}/map-link`);
  }

  contactLink(id: string) {
    return this.request<{ url: string }>("GET", `/api/complaints/${id}/contact-link`);
  }

  // -- statistics ---------------------------------------------------------------

  statsStatus(city?: string) {
    return this.request<Series>("GET", `/api/stats/status${city ? `?city=${encodeURIComponent(city)}` : ""}`);
  }

  statsCategory(city?: string) {
    return this.request<Series>("GET", `/api/stats/category${city ? `?city=${encodeURIComponent(city)}` : ""}`);
  }

  // -- notifications ---------------------------------------------------------------

  notifications() {
    return this.request<{ notifications: NotificationItem[] }>("GET", "/api/notifications");
  }

  markRead(id: string) {
    return this.request<{ notification: NotificationItem }>("POST", `/api/notifications/${id}/read`, {});
  }

  // -- admin ------------------------------------------------------------------------

  generateCredential(employeeId: string, firstName: string, lastName: string, city: string) {
    return this.request<CredentialResult>("POST", "/api/admin/credentials", {
      employee_id: employeeId,
      first_name: firstName,
      last_name: lastName,
      city,
    });
  }

  listEmployees() {
    return this.request<{ employees: Account[] }>("GET", "/api/admin/employees");
  }

  removeEmployee(accountId: string) {
    return this.request<{ removed: boolean; email_dispatched: boolean }>(
      "DELETE",
      `/api/admin/employees/${accountId}`,
    );
  }
}
