#!/usr/bin/env python3
"""Regenerate the shipped space tables and the frozen golden reports.

Everything here is deterministic, so reruns must reproduce the committed
files byte for byte. Takes under a minute on a laptop; the heavy part is
the two full (3,2) enumerations.
"""

import pathlib
import sys

from ctm_lab.analysis import (
    anomaly_report,
    cross_space_report,
    divergence_report,
    diversity_report,
    report_to_csv,
    used_rules_consistency,
)
from ctm_lab.bdm import BdmConfig
from ctm_lab.ctm import save_ctm_table, to_ctm
from ctm_lab.space import SpaceSpec, run_space

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "ctm_lab" / "data"
GOLDENS = ROOT / "tests" / "goldens"


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    GOLDENS.mkdir(parents=True, exist_ok=True)

    tables = {}
    for n in (2, 3):
        for mode in ("zero", "both"):
            name = f"d{n}_{mode}"
            freq = run_space(SpaceSpec(n, blank_mode=mode), workers=2)
            table = to_ctm(freq)
            tables[name] = table
            save_ctm_table(table, DATA / f"{name}.ctm")
            print(f"{name}: {len(table.entries)} strings, halted {freq.census.halted}")

    def freeze(name, report):
        path = GOLDENS / f"{name}.csv"
        path.write_text(report_to_csv(report), encoding="utf-8")
        print(f"froze {path.name}")

    freeze("anomalies_d2_zero", anomaly_report(tables["d2_zero"]))
    freeze("anomalies_d3_zero", anomaly_report(tables["d3_zero"]))
    freeze("anomalies_d3_both", anomaly_report(tables["d3_both"]))
    freeze("used_rules_d3_zero", used_rules_consistency(tables["d3_zero"]))
    freeze("cross_space_zero", cross_space_report(tables["d2_zero"], tables["d3_zero"]))
    freeze(
        "diversity_d3_zero_len12_block6",
        diversity_report(tables["d3_zero"], 12, BdmConfig(block_len=6)),
    )
    corpus = [format(i, "08b") for i in range(256)]
    freeze(
        "divergence_8bit_d3_zero_block4",
        divergence_report(tables["d3_zero"], corpus, BdmConfig(block_len=4)),
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
