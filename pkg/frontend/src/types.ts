/** Wire types for the ndviz session service. */

export type EdgeColor = "GREEN" | "DARK_GREEN" | "VIOLET";
export type NodeColor = "GOLD" | "INV_GREEN" | "INV_RED" | "INV_BICOLOR";
export type Verdict = "ACCEPT" | "REJECT" | "CUTOFF-LIMIT";

export interface Frame {
  index: number;
  displayed_nodes: number[];
  highlighted_edges: [number, EdgeColor][];
  node_decorations: Record<string, NodeColor>;
  computation_count: number;
  cutoff_count: number;
  consumed: string[];
  unconsumed: string[];
  tracked_stack: string[] | null;
  verdict_banner: Verdict | null;
}

export interface SessionStats {
  computations_final: number;
  accepting_leaves: number;
  cutoff_count: number;
  nodes: number;
}

export interface SessionInfo {
  id: string;
  frame_count: number;
  verdict: Verdict;
  stats: SessionStats;
}

export interface SessionOptions {
  max_steps?: number;
  add_dead?: boolean;
}

/** The slice of the service the stepper needs; tests substitute a fake. */
export interface FrameService {
  getFrame(id: string, n: number): Promise<Frame>;
  jump(id: string, from: number, dir: "next" | "prev"): Promise<number | null>;
}
