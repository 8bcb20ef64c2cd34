/**
 * Guidance copy per structure. Interpretive, not part of the classifier:
 * chains lack links across hierarchy levels, spokes leave leaf concepts
 * unconnected, networks already weave multiple routes.
 */

import type { StructureName } from "./types";

export const FEEDBACK: Record<StructureName, { title: string; advice: string }> = {
  chain: {
    title: "Chain structure",
    advice:
      "Your map reads as one long sequence. Are there concepts in different " +
      "parts of the chain that relate directly? Cross-links between levels " +
      "make the map easier to enter from the middle.",
  },
  spoke: {
    title: "Spoke structure",
    advice:
      "Most concepts hang off a central idea without touching each other. " +
      "Try linking related outer concepts directly; relations that bypass " +
      "the hub show deeper integration.",
  },
  network: {
    title: "Network structure",
    advice:
      "Concepts connect along multiple routes; this is the most integrated " +
      "of the three structures. Check that every link still says something " +
      "true and specific.",
  },
};

export const FEEDBACK_DISCLAIMER =
  "Guidance is an interpretation of the structure type, not a grade.";
