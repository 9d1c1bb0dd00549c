/** UI state machine, free of DOM so it runs under Node in tests.
 *
 * All algebra flows through the service; this store only holds what the
 * screen shows: the session, its current polynomial text (verbatim from
 * the server), the rendered SVG, the step form, and the analysis
 * overlay. One mutation may be in flight at a time.
 */

import {
  AnalyzeResult,
  ApiError,
  CurveInfo,
  HistoryEntry,
  PipelineDoc,
  ServiceClient,
  SessionView,
  StepInput,
  TangentLineInfo,
} from "./api.js";
import { Frame } from "./overlay.js";
import { snapPoint } from "./snap.js";

export interface StepForm {
  kind: "blow_down" | "blow_up";
  pivot: string;
  replaced: string;
  newVar: string;
  center: string;
  strict: boolean;
}

export interface OverlayState {
  at: [string, string];
  point: [number, number];
  status: AnalyzeResult["status"] | "no_candidate";
  multiplicity?: number;
  lines: TangentLineInfo[];
  residual?: string;
}

export interface UiState {
  curves: CurveInfo[];
  sessionId: string | null;
  poly: string;
  vars: [string, string] | null;
  svg: string;
  history: HistoryEntry[];
  frame: Frame | null;
  cells: number;
  pending: boolean;
  form: StepForm;
  overlay: OverlayState | null;
  lastError: string | null;
}

const VAR_POOL = ["z", "t", "w", "s", "y", "v", "u"];
const DEFAULT_FRAME: Frame = [-2, 2, -2, 2];

function freshVariable(taken: readonly string[]): string {
  for (const name of VAR_POOL) {
    if (!taken.includes(name)) return name;
  }
  return "n" + taken.length;
}

export class UiStore {
  state: UiState = {
    curves: [],
    sessionId: null,
    poly: "",
    vars: null,
    svg: "",
    history: [],
    frame: null,
    cells: 256,
    pending: false,
    form: {
      kind: "blow_down",
      pivot: "x",
      replaced: "y",
      newVar: "z",
      center: "0",
      strict: false,
    },
    overlay: null,
    lastError: null,
  };

  private listeners = new Set<() => void>();

  constructor(readonly client: ServiceClient) {}

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  private patch(changes: Partial<UiState>): void {
    this.state = { ...this.state, ...changes };
    this.notify();
  }

  async loadCatalog(): Promise<void> {
    this.patch({ curves: await this.client.listCurves() });
  }

  /** Run a mutation exclusively; the form stays disabled while pending. */
  private async mutate(action: () => Promise<void>): Promise<void> {
    if (this.state.pending) throw new Error("a request is already in flight");
    this.patch({ pending: true, lastError: null });
    try {
      await action();
    } catch (err) {
      this.patch({ lastError: describe(err) });
      throw err;
    } finally {
      this.patch({ pending: false });
    }
  }

  /** Adopt the server's view of the session (the source of truth). */
  private async syncSession(): Promise<void> {
    const id = this.state.sessionId;
    if (id === null) return;
    const view = await this.client.showSession(id);
    this.adopt(view);
    await this.refreshSvg();
  }

  private adopt(view: SessionView): void {
    const vars = view.vars as [string, string];
    this.patch({
      sessionId: view.id,
      poly: view.poly,
      vars,
      history: view.history,
      overlay: null,
      form: { ...this.state.form, pivot: vars[0], replaced: vars[1] },
    });
  }

  async createSessionFromCurve(slug: string): Promise<void> {
    await this.mutate(async () => {
      const view = await this.client.createSession({ curve: slug });
      const entry = this.state.curves.find((c) => c.slug === slug);
      this.patch({ frame: entry ? entry.frame : DEFAULT_FRAME });
      this.adopt(view);
      this.suggestNewVariable();
      await this.refreshSvg();
    });
  }

  async createSessionFromExpr(expr: string): Promise<void> {
    await this.mutate(async () => {
      const view = await this.client.createSession({ expr });
      this.patch({ frame: DEFAULT_FRAME });
      this.adopt(view);
      this.suggestNewVariable();
      await this.refreshSvg();
    });
  }

  private suggestNewVariable(): void {
    const vars = this.state.vars;
    if (vars) {
      this.patch({ form: { ...this.state.form, newVar: freshVariable(vars) } });
    }
  }

  setForm(changes: Partial<StepForm>): void {
    this.patch({ form: { ...this.state.form, ...changes } });
  }

  setFrame(frame: Frame): void {
    this.patch({ frame });
  }

  private formStep(): StepInput {
    const f = this.state.form;
    const step: StepInput = {
      kind: f.kind,
      pivot: f.pivot,
      replaced: f.replaced,
      new: f.newVar,
      center: f.center.trim(),
    };
    if (f.kind === "blow_down" && f.strict) step.strict = true;
    return step;
  }

  async applyStep(): Promise<void> {
    const id = this.requireSession();
    await this.mutate(async () => {
      await this.client.addStep(id, this.formStep());
      await this.syncSession();
      this.suggestNewVariable();
    });
  }

  async undo(): Promise<void> {
    const id = this.requireSession();
    await this.mutate(async () => {
      await this.client.undo(id);
      await this.syncSession();
      this.suggestNewVariable();
    });
  }

  async exportPipeline(): Promise<PipelineDoc> {
    const id = this.requireSession();
    return this.client.exportPipeline(id);
  }

  /**
   * Click-to-inspect: snap to a small-denominator rational candidate,
   * then let the service classify the exact point.
   */
  async inspectAt(u: number, v: number, radius: number): Promise<void> {
    const vars = this.state.vars;
    if (!vars) return;
    const candidate = snapPoint(u, v, radius);
    if (candidate === null) {
      this.patch({
        overlay: { at: ["", ""], point: [u, v], status: "no_candidate", lines: [] },
      });
      return;
    }
    const report = await this.client.analyze(this.state.poly, vars, candidate);
    this.patch({
      overlay: {
        at: candidate,
        point: [evalRational(candidate[0]), evalRational(candidate[1])],
        status: report.status,
        multiplicity: report.multiplicity,
        lines: report.lines ?? [],
        residual: report.residual,
      },
    });
  }

  /** Prefill the form to explode or implode at the inspected point. */
  prefillHere(kind: "blow_down" | "blow_up"): void {
    const overlay = this.state.overlay;
    const vars = this.state.vars;
    if (!overlay || !vars || overlay.status === "no_candidate") return;
    this.patch({
      form: {
        ...this.state.form,
        kind,
        pivot: vars[0],
        replaced: vars[1],
        newVar: freshVariable(vars),
        center: overlay.at[0],
      },
    });
  }

  async refreshSvg(): Promise<void> {
    const vars = this.state.vars;
    const frame = this.state.frame ?? DEFAULT_FRAME;
    if (!vars || !this.state.poly) return;
    const result = await this.client.rasterSvg(
      this.state.poly,
      vars,
      frame,
      this.state.cells,
    );
    this.patch({ svg: result.svg, frame });
  }

  /**
   * Structural invariants, called by tests after every mutation: the
   * shown polynomial re-parses to itself and the local history length
   * matches the server's.
   */
  async checkInvariants(): Promise<void> {
    const vars = this.state.vars;
    if (!vars || this.state.sessionId === null) return;
    const parsed = await this.client.parse(this.state.poly, vars);
    if (parsed.poly !== this.state.poly) {
      throw new Error(
        `displayed polynomial is not canonical: ${this.state.poly}`,
      );
    }
    const view = await this.client.showSession(this.state.sessionId);
    if (view.history.length !== this.state.history.length) {
      throw new Error("history length diverged from the server");
    }
  }

  private requireSession(): string {
    const id = this.state.sessionId;
    if (id === null) throw new Error("no active session");
    return id;
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.detail}`;
  return err instanceof Error ? err.message : String(err);
}

function evalRational(text: string): number {
  const slash = text.indexOf("/");
  if (slash < 0) return Number(text);
  return Number(text.slice(0, slash)) / Number(text.slice(slash + 1));
}
