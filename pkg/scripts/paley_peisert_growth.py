#!/usr/bin/env python3
"""How the outer algebra grows along the Paley and Peisert families.

For Paley graphs on q points the point stabilizer is tiny (multiplications
by squares, plus field automorphisms), so the orbital count and with it
dim T-tilde grows linearly: 3 + 2q for prime q.  The Peisert graphs sit on
the same vertex counts but carry a larger stabilizer, so their outer
dimension stays well below the Paley line.  This script tabulates both.
"""

import argparse
import sys

from srgta.classifier import triple_transitivity_verdict
from srgta.families import FamilySpec, construct

PALEY_SIZES = [5, 9, 13, 17, 25, 29, 37, 41]
PEISERT_SPECS = [(7, 1, 49), (3, 2, 81), (11, 1, 121)]


def paley_row(q, timeout):
    r = triple_transitivity_verdict(construct(FamilySpec("paley", (q,))), timeout=timeout)
    line = 3 + 2 * q
    note = f"3+2q={line}" if r.dims["t_tilde"] == line else f"vs 3+2q={line}"
    print(
        f"paley    q={q:>3}  aut {r.aut_order:>6}  t {r.dims['t']:>3}"
        f"  ttilde {r.dims['t_tilde']:>3}  ({note})"
    )


def peisert_row(p, t, timeout):
    r = triple_transitivity_verdict(construct(FamilySpec("peisert", (p, t))), timeout=timeout)
    q = p ** (2 * t)
    print(
        f"peisert  q={q:>3}  aut {r.aut_order:>6}  t {r.dims['t']:>3}"
        f"  ttilde {r.dims['t_tilde']:>3}  (paley line would be {3 + 2 * q})"
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-q", type=int, default=81,
                    help="largest point count to include (default 81)")
    ap.add_argument("--timeout", type=float, default=300.0,
                    help="per-row automorphism search budget (seconds)")
    args = ap.parse_args(argv)
    for q in PALEY_SIZES:
        if q <= args.max_q:
            paley_row(q, args.timeout)
    for p, t, q in PEISERT_SPECS:
        if q <= args.max_q:
            peisert_row(p, t, args.timeout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
