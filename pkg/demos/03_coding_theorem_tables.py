#!/usr/bin/env python3
"""From output counts to complexity estimates, and growing them over time.

A string produced by many machines is algorithmically probable, so its
complexity estimate -log2(frequency) is low. Tables from bigger spaces
carry more evidence; merging keeps the bigger space's entry whenever both
know a string.
"""

from ctm_lab import (
    NORM_ALL,
    SpaceSpec,
    builtin_table,
    complexity_of,
    merge_ctm,
    run_space,
    to_ctm,
)


def main():
    freq = run_space(SpaceSpec(2))
    halting = to_ctm(freq)  # probabilities over halting runs: they sum to 1
    raw = to_ctm(freq, NORM_ALL)  # raw ratio over all runs: sums to halted/total

    print("halting-normalized mass:", halting.probability_sum())
    print("all-machines mass:      ", raw.probability_sum())
    for s in ("0", "01", "010"):
        print(f"  complexity('{s}') = {complexity_of(halting, s):.4f} bits")

    d3 = builtin_table("d3_zero")
    merged = merge_ctm(halting, d3)
    print("\nmerged table:", len(merged.entries), "strings from spaces",
          sorted({e.source_space for e in merged.entries.values()}))
    shared = "010"
    print(f"'{shared}' now carries the 3-state estimate:",
          merged.entries[shared].source_space == 3)

    # A table file is canonical: saving twice gives identical bytes, and
    # strings it never saw simply have no entry.
    print("unknown 40-bit string lookup:", complexity_of(d3, "01" * 20))


if __name__ == "__main__":
    main()
