#!/usr/bin/env python3
"""Regenerates data/fixture-160.json.

The fixture is a synthetic 160-activity catalog whose per-level counts
(61 human-task / 14 transparency / 22 partial-automation / 13
tool-possible / 50 complete) produce the published global percentages
38/9/14/8/31 under half-up rounding, with every SG activity a human
task. Raw counts per practice are a constructed witness, not published
data; tests pin this exact composition.
"""

import json
import sys

PRACTICES = [
    ("SM", "Security management"),
    ("SR", "Specification of security requirements"),
    ("SD", "Secure design"),
    ("SI", "Secure implementation"),
    ("SVV", "Security verification and validation testing"),
    ("DM", "Management of security-related issues"),
    ("SUM", "Security update management"),
    ("SG", "Security guidelines"),
]

# (human-task, transparency, partial-automation, tool-possible, complete)
COMPOSITION = {
    "SM": (5, 1, 2, 2, 12),
    "SR": (12, 3, 5, 2, 0),
    "SD": (10, 3, 3, 3, 1),
    "SI": (8, 1, 3, 2, 10),
    "SVV": (2, 1, 4, 1, 14),
    "DM": (10, 4, 3, 2, 3),
    "SUM": (2, 1, 2, 1, 10),
    "SG": (12, 0, 0, 0, 0),
}

LEVELS = ["human-task", "transparency", "partial-automation", "tool-possible", "complete"]

STAGES = {
    "SM": [["code"], ["build"]],
    "SR": [["plan"]],
    "SD": [["plan"]],
    "SI": [["code"], ["code", "build"]],
    "SVV": [["build"], ["test"], ["release"]],
    "DM": [["monitor"]],
    "SUM": [["operate"], ["monitor"]],
    "SG": [["release"], ["deploy"]],
}

REPO_CYCLE = ["backlog", "code-base", "test-repo", "pre-production",
              "production", "documentation", "analytics"]


def main() -> None:
    assert sum(sum(v) for v in COMPOSITION.values()) == 160
    catalog = {
        "schema": "s2c-catalog/1",
        "standard_id": "IEC-62443-4-1",
        "version": "fixture-160",
        "practices": [{"code": c, "name": n} for c, n in PRACTICES],
        "artifacts": [],
        "tools": [],
        "activities": [],
    }

    for code, name in PRACTICES:
        counts = COMPOSITION[code]
        total = sum(counts)
        levels = [level for level, n in zip(LEVELS, counts) for _ in range(n)]
        low = code.lower()

        catalog["tools"].append({
            "name": f"{low}-suite",
            "categories": [f"{low}-automation"],
            "aliases": [],
            "open_source": True,
            "ci_integrable": True,
        })
        for i in range(1, total + 1):
            catalog["artifacts"].append({
                "name": f"{low}-work-{i}",
                "repository": REPO_CYCLE[(i - 1) % len(REPO_CYCLE)],
                "description": f"Working artifact {i} of the {code} chain.",
            })

        for i, level in enumerate(levels, start=1):
            automated = level in ("transparency", "partial-automation", "complete")
            catalog["activities"].append({
                "id": f"{code}-t{i}",
                "practice": code,
                "requirement": f"{code}-{(i + 4) // 5}",
                "name": f"{name} activity {i}",
                "description": f"Synthetic {code} activity {i} for the statistics fixtures.",
                "inputs": [] if i == 1 else [f"{low}-work-{i - 1}"],
                "outputs": [f"{low}-work-{i}"],
                "automation": level,
                "tools": [f"{low}-suite"] if automated else [],
                "stages": STAGES[code][(i - 1) % len(STAGES[code])],
            })

    out = sys.argv[1] if len(sys.argv) > 1 else "data/fixture-160.json"
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(catalog, fh, indent=2)
        fh.write("\n")
    print(f"wrote {out}: {len(catalog['activities'])} activities")


if __name__ == "__main__":
    main()
