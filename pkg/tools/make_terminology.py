"""Regenerate src/hl7dt/data/terminology.tsv.

The ActStatus and ActMood code systems are written out by hand; the
ToyFinding hierarchy is a deterministic random DAG of 200 concepts where
roughly one concept in five has a second parent.
"""
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "hl7dt" / "data" / "terminology.tsv"

ACT_STATUS = "2.16.840.1.113883.5.14"
ACT_STATUS_VS = "2.16.840.1.113883.1.11.15933"
ACT_MOOD = "2.16.840.1.113883.5.1001"
ACT_MOOD_VS = "2.16.840.1.113883.1.11.10196"
FINDING = "2.999.1.1"
FINDING_VS = "2.999.1.2"

STATUS_CODES = [
    ("normal", "normal", []),
    ("aborted", "aborted", ["normal"]),
    ("active", "active", ["normal"]),
    ("cancelled", "cancelled", ["normal"]),
    ("completed", "completed", ["normal"]),
    ("held", "held", ["normal"]),
    ("new", "new", ["normal"]),
    ("suspended", "suspended", ["normal"]),
    ("nullified", "nullified", []),
    ("obsolete", "obsolete", []),
]

MOOD_CODES = [
    ("DEF", "definition", []),
    ("EVN", "event (occurrence)", []),
    ("INT", "intent", []),
    ("APT", "appointment", ["INT"]),
    ("ARQ", "appointment request", ["INT"]),
    ("PRMS", "promise", ["INT"]),
    ("PRP", "proposal", ["INT"]),
    ("RQO", "request", ["INT"]),
    ("GOL", "goal", []),
    ("RSK", "risk", []),
]

QUALIFIERS = ["Acute", "Chronic", "Benign", "Recurrent", "Congenital", "Traumatic",
              "Partial", "Bilateral", "Focal", "Diffuse"]
MORPHOLOGY = ["lesion", "rupture", "stenosis", "inflammation", "web", "tumour",
              "defect", "haemorrhage", "cyst", "ulcer"]
SITES = ["papillary muscle", "visual field", "oesophageal body", "choroid plexus",
         "liver", "kidney", "left atrium", "lumbar spine", "retina", "colon",
         "femur", "trachea"]


def findings(n=200, seed=7):
    rng = random.Random(seed)
    rows = [("F000", "Clinical finding", [])]
    names = {"Clinical finding"}
    for i in range(1, n):
        code = f"F{i:03d}"
        while True:
            name = f"{rng.choice(QUALIFIERS)} {rng.choice(MORPHOLOGY)} of {rng.choice(SITES)}"
            if name not in names:
                names.add(name)
                break
        parents = [f"F{rng.randrange(i):03d}"]
        if i > 2 and rng.random() < 0.2:
            second = f"F{rng.randrange(i):03d}"
            if second not in parents:
                parents.append(second)
        rows.append((code, name, parents))
    return rows


def main():
    lines = [
        "# Concept registry.",
        "#",
        "# [codesystem]  oid <TAB> name <TAB> version",
        "# [code]        codesystem oid <TAB> code <TAB> displayname <TAB> parent,parent,...",
        "# [valueset]    oid <TAB> name <TAB> version <TAB> codesystem oid <TAB> code,code,... or *",
        "# [domain]      name <TAB> codesystem oid <TAB> valueset oid",
        "#",
        "# Generated by tools/make_terminology.py.",
        "[codesystem]",
        f"{ACT_STATUS}\tActStatus\t2009-08-30",
        f"{ACT_MOOD}\tActMood\t2009-08-30",
        f"{FINDING}\tToyFinding\t1",
        "[code]",
    ]
    for oid, rows in ((ACT_STATUS, STATUS_CODES), (ACT_MOOD, MOOD_CODES), (FINDING, findings())):
        for code, display, parents in rows:
            lines.append(f"{oid}\t{code}\t{display}\t{','.join(parents)}")
    lines += [
        "[valueset]",
        f"{ACT_STATUS_VS}\tActStatus\t2009-08-30\t{ACT_STATUS}\t*",
        f"{ACT_MOOD_VS}\tActMood\t2009-08-30\t{ACT_MOOD}\t*",
        f"{FINDING_VS}\tToyFinding\t1\t{FINDING}\t*",
        "[domain]",
        f"ActStatus\t{ACT_STATUS}\t{ACT_STATUS_VS}",
        f"ActMood\t{ACT_MOOD}\t{ACT_MOOD_VS}",
        f"ToyFinding\t{FINDING}\t{FINDING_VS}",
    ]
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
