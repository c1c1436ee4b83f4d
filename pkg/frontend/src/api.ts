/**
 * Thin HTTP client for the artifact service. All traffic goes through
 * POST /api/v1/{flat,net,preview} as multipart form data with an "image"
 * file part and a "params" JSON part; errors come back as {error, field}.
 */

import type { Shape } from "./state.js";

export type Endpoint = "flat" | "net" | "preview";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, message: string, field: string | null) {
    super(message);
    this.name = "ApiRequestError";
    this.status = status;
    this.field = field;
  }
}

type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

/**
 * Send one artifact request and return the response body. Throws
 * ApiRequestError with the server's message (and offending field, when the
 * server names one) on any non-2xx response.
 */
export async function postArtifact(
  baseUrl: string,
  endpoint: Endpoint,
  image: Blob,
  params: string,
  fetchImpl: FetchLike = fetch,
): Promise<Blob> {
  const form = new FormData();
  form.append("image", image, "input.png");
  form.append("params", params);
  const resp = await fetchImpl(`${baseUrl}/api/v1/${endpoint}`, {
    method: "POST",
    body: form,
  });
  if (!resp.ok) {
    let message = `request failed with status ${resp.status}`;
    let field: string | null = null;
    try {
      const body = (await resp.json()) as { error?: unknown; field?: unknown };
      if (typeof body.error === "string") message = body.error;
      if (typeof body.field === "string") field = body.field;
    } catch {
      // Non-JSON error body; keep the generic message.
    }
    throw new ApiRequestError(resp.status, message, field);
  }
  return resp.blob();
}

/** File name offered for a downloaded artifact. */
export function downloadFileName(endpoint: Endpoint, shape: Shape): string {
  if (endpoint === "net") return `tangi-net-${shape}.svg`;
  if (endpoint === "flat") return "tangi-flat.svg";
  return "tangi-preview.png";
}
