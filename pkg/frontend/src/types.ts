/** Wire types shared with the classification service. */

export interface MapNodeDoc {
  id: string;
  label?: string;
}

export interface MapEdgeDoc {
  source: string;
  target: string;
  label?: string;
}

/** The JSON map format accepted by POST /api/classify and /api/features. */
export interface MapDocument {
  id: string;
  nodes: MapNodeDoc[];
  edges: MapEdgeDoc[];
}

export type StructureName = "chain" | "network" | "spoke";

export interface FeatureDoc {
  num_nodes: number;
  num_edges: number;
  edges_per_node_ratio: number;
  mean_degree: number;
  std_degree: number;
  q1_degree: number;
  q2_degree: number;
  q3_degree: number;
  max_degree: number;
}

export interface ClassifyResponse {
  label: StructureName;
  scores: Record<StructureName, number>;
  features: FeatureDoc;
  warnings: string[];
  model_version: string;
}

export interface ServiceError {
  code: string;
  message: string;
}

/** Editor-side state. Positions and labels never affect classification. */
export interface EditorNode {
  id: string;
  label: string;
  x: number;
  y: number;
}

export interface EditorEdge {
  source: string;
  target: string;
  label?: string;
}

export interface EditorState {
  nodes: EditorNode[];
  edges: EditorEdge[];
  selection: string | null;
  /** bumped on every structural edit; classification responses are tagged with it */
  revision: number;
}
