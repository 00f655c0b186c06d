import { App } from "./app";

const baseUrl = (window as { CS_API_BASE?: string }).CS_API_BASE ?? "http://127.0.0.1:8000";
const app = new App({ baseUrl });
app.mount(document.getElementById("root") as HTMLElement);
