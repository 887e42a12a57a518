"""Convert an M3 JSON dump to the optheta dataset format.

Expects a JSON object keyed by series id, each entry holding `period`
(YEARLY/QUARTERLY/MONTHLY/OTHER), `h`, `x` (in-sample) and `xx` (held-out),
as shipped in the `fcompdata` Python package (fcompdata/data/m3_data.json).

    python scripts/m3_to_dataset.py m3_data.json m3.csv
"""

import csv
import json
import sys

GROUPS = {"YEARLY": ("Yearly", 1), "QUARTERLY": ("Quarterly", 4), "MONTHLY": ("Monthly", 12), "OTHER": ("Other", 1)}


def scalar(v):
    return v[0] if isinstance(v, list) else v


def main(src, dst):
    with open(src) as f:
        data = json.load(f)
    with open(dst, "w", newline="") as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["id", "group", "period", "h", "n", "values"])
        for sid, e in data.items():
            group, period = GROUPS[scalar(e["period"]).upper()]
            x, xx = e["x"], e["xx"]
            if len(xx) != int(scalar(e["h"])):
                raise SystemExit(f"{sid}: {len(xx)} held-out values for h={scalar(e['h'])}")
            w.writerow([sid, group, period, len(xx), len(x), *x, *xx])


if __name__ == "__main__":
    if len(sys.argv) != 3:
        raise SystemExit(__doc__)
    main(sys.argv[1], sys.argv[2])
