/** Console string catalogs. Chart label keys arriving from the statistics API
 * (status.* / category.*) are part of the catalog, so series localize the
 * same way as every other visible string. */

export type Language = "en" | "bn";

const en: Record<string, string> = {
  "app.title": "CitySolution",
  "app.logout": "Log out",
  "app.language.switch": "বাংলা",
  "app.loading": "Loading…",
  "error.network": "Network unavailable",

  "login.title": "Sign in",
  "login.email": "Email",
  "login.password": "Password",
  "login.submit": "Log in",
  "register.citizen.title": "Citizen registration",
  "register.name": "Display name",
  "register.submit": "Register",
  "register.verify.hint": "Check your email for the verification token",
  "register.verify.token": "Verification token",
  "register.verify.submit": "Verify email",
  "register.verify.done": "Email verified, you can log in now",
  "register.employee.title": "Employee registration",
  "register.employee.payload": "Credential payload (scan or paste)",

  "citizen.submit.title": "Report a problem",
  "citizen.submit.photo": "Photo",
  "citizen.submit.mode.auto": "Automatic location",
  "citizen.submit.mode.manual": "Manual location",
  "citizen.submit.manual_city": "City name",
  "citizen.submit.note": "Note (optional)",
  "citizen.submit.button": "Submit complaint",
  "citizen.submit.success": "Submitted: category {0}, status {1}",
  "citizen.submit.missing_photo": "Choose a photo first",
  "citizen.drafts.title": "Offline drafts",
  "citizen.drafts.saved": "No connection, the draft was saved",
  "citizen.drafts.retry": "Submit now",
  "citizen.history.title": "My complaints",
  "citizen.history.empty": "No complaints yet",
  "citizen.notifications.title": "Notifications",
  "citizen.notifications.empty": "No notifications",
  "citizen.notifications.mark_read": "Mark read",

  "employee.board.title": "City queue: {0}",
  "employee.filter.status": "Status",
  "employee.filter.category": "Category",
  "employee.filter.all": "All",
  "employee.filter.apply": "Apply",
  "employee.action.processing": "Start processing",
  "employee.action.solved": "Mark solved",
  "employee.action.fake": "Mark fake",
  "employee.action.reassign": "Change category",
  "employee.action.map": "Map",
  "employee.action.email": "Email",
  "employee.action.feedback": "Send feedback",
  "employee.feedback.prompt": "Feedback text",
  "employee.board.empty": "No complaints in your city",
  "employee.conflict.refreshed": "The complaint changed elsewhere, the list was refreshed",

  "admin.credential.title": "Issue employee credential",
  "admin.credential.id": "Employee ID",
  "admin.credential.first": "First name",
  "admin.credential.last": "Last name",
  "admin.credential.city": "City",
  "admin.credential.generate": "Generate",
  "admin.credential.payload": "Credential payload",
  "admin.credential.copy": "Copy",
  "admin.credential.copied": "Copied",
  "admin.roster.title": "Employees",
  "admin.roster.remove": "Remove",
  "admin.roster.confirm": "Remove this employee?",
  "admin.roster.removed": "Employee removed, a notification email was dispatched",
  "admin.roster.empty": "No employees",

  "stats.title": "Statistics",
  "stats.city": "City (empty for nationwide)",
  "stats.load": "Load",
  "chart.status.title": "By status",
  "chart.category.title": "By category",
  "chart.empty": "No data yet",

  "status.pending": "Pending",
  "status.processing": "Processing",
  "status.solved": "Solved",
  "category.damaged_road": "Damaged Road",
  "category.flood": "Flood",
  "category.trash": "Trash",
  "category.homeless_people": "Homeless People",
  "category.fake_complaint": "Fake Complaint",
};

const bn: Record<string, string> = {
  "app.title": "CitySolution",
  "app.logout": "লগ আউট",
  "app.language.switch": "English",
  "app.loading": "লোড হচ্ছে…",
  "error.network": "নেটওয়ার্ক পাওয়া যাচ্ছে না",

  "login.title": "সাইন ইন",
  "login.email": "ইমেইল",
  "login.password": "পাসওয়ার্ড",
  "login.submit": "লগ ইন",
  "register.citizen.title": "নাগরিক নিবন্ধন",
  "register.name": "নাম",
  "register.submit": "নিবন্ধন করুন",
  "register.verify.hint": "যাচাই টোকেনের জন্য আপনার ইমেইল দেখুন",
  "register.verify.token": "যাচাই টোকেন",
  "register.verify.submit": "ইমেইল যাচাই করুন",
  "register.verify.done": "ইমেইল যাচাই হয়েছে, এখন লগ ইন করতে পারেন",
  "register.employee.title": "কর্মচারী নিবন্ধন",
  "register.employee.payload": "পরিচয়পত্র পেলোড (স্ক্যান বা পেস্ট করুন)",

  "citizen.submit.title": "সমস্যা জানান",
  "citizen.submit.photo": "ছবি",
  "citizen.submit.mode.auto": "স্বয়ংক্রিয় অবস্থান",
  "citizen.submit.mode.manual": "নিজে অবস্থান লিখুন",
  "citizen.submit.manual_city": "শহরের নাম",
  "citizen.submit.note": "মন্তব্য (ঐচ্ছিক)",
  "citizen.submit.button": "অভিযোগ জমা দিন",
  "citizen.submit.success": "জমা হয়েছে: শ্রেণি {0}, অবস্থা {1}",
  "citizen.submit.missing_photo": "আগে একটি ছবি বাছাই করুন",
  "citizen.drafts.title": "অফলাইন খসড়া",
  "citizen.drafts.saved": "সংযোগ নেই, খসড়া সংরক্ষণ করা হয়েছে",
  "citizen.drafts.retry": "এখন জমা দিন",
  "citizen.history.title": "আমার অভিযোগসমূহ",
  "citizen.history.empty": "এখনও কোনো অভিযোগ নেই",
  "citizen.notifications.title": "বিজ্ঞপ্তি",
  "citizen.notifications.empty": "কোনো বিজ্ঞপ্তি নেই",
  "citizen.notifications.mark_read": "পঠিত করুন",

  "employee.board.title": "শহরের তালিকা: {0}",
  "employee.filter.status": "অবস্থা",
  "employee.filter.category": "শ্রেণি",
  "employee.filter.all": "সব",
  "employee.filter.apply": "প্রয়োগ",
  "employee.action.processing": "প্রক্রিয়া শুরু",
  "employee.action.solved": "সমাধান হয়েছে",
  "employee.action.fake": "ভুয়া চিহ্নিত করুন",
  "employee.action.reassign": "শ্রেণি বদলান",
  "employee.action.map": "মানচিত্র",
  "employee.action.email": "ইমেইল",
  "employee.action.feedback": "মতামত পাঠান",
  "employee.feedback.prompt": "মতামতের লেখা",
  "employee.board.empty": "আপনার শহরে কোনো অভিযোগ নেই",
  "employee.conflict.refreshed": "অভিযোগটি অন্যত্র বদলেছে, তালিকা হালনাগাদ হয়েছে",

  "admin.credential.title": "কর্মচারী পরিচয়পত্র ইস্যু",
  "admin.credential.id": "কর্মচারী আইডি",
  "admin.credential.first": "নামের প্রথম অংশ",
  "admin.credential.last": "নামের শেষ অংশ",
  "admin.credential.city": "শহর",
  "admin.credential.generate": "তৈরি করুন",
  "admin.credential.payload": "পরিচয়পত্র পেলোড",
  "admin.credential.copy": "কপি",
  "admin.credential.copied": "কপি হয়েছে",
  "admin.roster.title": "কর্মচারীগণ",
  "admin.roster.remove": "সরান",
  "admin.roster.confirm": "এই কর্মচারীকে সরাবেন?",
  "admin.roster.removed": "কর্মচারী সরানো হয়েছে, বিজ্ঞপ্তি ইমেইল পাঠানো হয়েছে",
  "admin.roster.empty": "কোনো কর্মচারী নেই",

  "stats.title": "পরিসংখ্যান",
  "stats.city": "শহর (দেশব্যাপী হলে খালি)",
  "stats.load": "লোড",
  "chart.status.title": "অবস্থা অনুযায়ী",
  "chart.category.title": "শ্রেণি অনুযায়ী",
  "chart.empty": "এখনও কোনো ডেটা নেই",

  "status.pending": "অপেক্ষমাণ",
  "status.processing": "প্রক্রিয়াধীন",
  "status.solved": "সমাধান হয়েছে",
  "category.damaged_road": "ক্ষতিগ্রস্ত রাস্তা",
  "category.flood": "বন্যা",
  "category.trash": "আবর্জনা",
  "category.homeless_people": "গৃহহীন মানুষ",
  "category.fake_complaint": "ভুয়া অভিযোগ",
};

export const CATALOGS: Record<Language, Record<string, string>> = { en, bn };

export function t(key: string, language: Language, params: string[] = []): string {
  const template = CATALOGS[language][key] ?? CATALOGS.en[key];
  if (template === undefined) {
    throw new Error(`missing console catalog key: ${key}`);
  }
  return template.replace(/\{(\d+)\}/g, (_, index) => params[Number(index)] ?? "");
}

/** Localize a server-sent label key, falling back to the key's last segment. */
export function label(key: string, language: Language): string {
  return CATALOGS[language][key] ?? CATALOGS.en[key] ?? key.split(".").pop() ?? key;
}
