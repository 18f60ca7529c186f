import { ApiClient } from "./api.js";
import { App } from "./app.js";

const STORAGE_KEY = "qdup.api";
const DEFAULT_BASE = "http://127.0.0.1:8000";

/** Base URL precedence: ?api= query param, then localStorage, then default. */
export function resolveBaseUrl(search: string, storage: Storage): string {
  const fromQuery = new URLSearchParams(search).get("api");
  if (fromQuery) {
    storage.setItem(STORAGE_KEY, fromQuery);
    return fromQuery;
  }
  return storage.getItem(STORAGE_KEY) ?? DEFAULT_BASE;
}

function bootstrap(): void {
  const root = document.getElementById("app");
  if (root === null) {
    return;
  }
  const base = resolveBaseUrl(window.location.search, window.localStorage);
  const app = new App(root, new ApiClient(base), {
    onBaseChange: (next) => {
      window.localStorage.setItem(STORAGE_KEY, next);
      window.location.reload();
    },
  });
  app.mount();
  void app.refreshStats();
}

bootstrap();
