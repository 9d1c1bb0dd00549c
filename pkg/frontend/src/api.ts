/** Typed client for the curvelab HTTP service.
 *
 * Every polynomial travels as expression text in the service grammar;
 * the client never does algebra itself.
 */

export interface ConstructionInfo {
  parent: string;
  kind: string;
  pivot: string;
  replaced: string;
  new: string;
  center: string;
}

export interface CurveInfo {
  slug: string;
  name: string;
  expr: string;
  vars: [string, string];
  figure: string;
  frame: [number, number, number, number];
  construction: ConstructionInfo | null;
}

export interface StepInput {
  kind: "blow_down" | "blow_up";
  pivot: string;
  replaced: string;
  new: string;
  center: string;
  strict?: boolean;
}

export interface ParseResult {
  poly: string;
  vars: string[];
  degree: number | null;
  terms: number;
}

export interface TransformResult {
  poly: string;
  vars: string[];
  exceptional_multiplicity?: number;
}

export interface TangentLineInfo {
  line: string;
  multiplicity: number;
  direction: [number, number];
}

export interface AnalyzeResult {
  status: "not_on_curve" | "smooth" | "singular";
  multiplicity?: number;
  tangent_lines?: string[];
  lines?: TangentLineInfo[];
  residual?: string;
}

export interface HistoryEntry {
  step: Record<string, unknown>;
  poly: string;
}

export interface SessionView {
  id: string;
  seed: Record<string, unknown>;
  poly: string;
  vars: string[];
  history: HistoryEntry[];
}

export interface StepResult {
  poly: string;
  vars: string[];
  history_length: number;
  exceptional_multiplicity?: number;
}

export interface PipelineDoc {
  version: number;
  seed: Record<string, unknown>;
  steps: Record<string, unknown>[];
}

/** Error body from the service, preserved with its HTTP status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
    readonly offset?: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ApiError(
      response.status,
      String(body.error ?? "UnknownError"),
      String(body.detail ?? ""),
      typeof body.offset === "number" ? body.offset : undefined,
    );
  }
  return body as T;
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  private async get<T>(path: string): Promise<T> {
    return unwrap<T>(await fetch(this.baseUrl + path));
  }

  private async post<T>(path: string, body?: unknown): Promise<T> {
    return unwrap<T>(
      await fetch(this.baseUrl + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: body === undefined ? "{}" : JSON.stringify(body),
      }),
    );
  }

  listCurves(): Promise<CurveInfo[]> {
    return this.get("/curves");
  }

  parse(expr: string, vars?: [string, string]): Promise<ParseResult> {
    return this.post("/parse", vars ? { expr, vars } : { expr });
  }

  transform(
    poly: string,
    vars: [string, string],
    step: StepInput,
  ): Promise<TransformResult> {
    return this.post("/transform", { poly, vars, step });
  }

  analyze(
    poly: string,
    vars: [string, string],
    at: [string, string],
  ): Promise<AnalyzeResult> {
    return this.post("/analyze", { poly, vars, at });
  }

  rasterSvg(
    poly: string,
    vars: [string, string],
    viewport: [number, number, number, number],
    cells: number,
  ): Promise<{ svg: string }> {
    return this.post("/raster", { poly, vars, viewport, cells });
  }

  createSession(seed: { curve: string } | { expr: string }): Promise<SessionView> {
    return this.post("/sessions", seed);
  }

  showSession(id: string): Promise<SessionView> {
    return this.get(`/sessions/${id}`);
  }

  addStep(
    id: string,
    step: StepInput,
    preTranslate?: [string, string],
  ): Promise<StepResult> {
    const body: Record<string, unknown> = { step };
    if (preTranslate) body.pre_translate = preTranslate;
    return this.post(`/sessions/${id}/steps`, body);
  }

  undo(id: string): Promise<StepResult> {
    return this.post(`/sessions/${id}/undo`);
  }

  exportPipeline(id: string): Promise<PipelineDoc> {
    return this.get(`/sessions/${id}/export`);
  }
}
