"""Factorization feasibility from a nilpotent rank profile.

Takes the ranks of the successive powers of a nilpotent p-curvature and
a top Jordan block size, and decides whether the profile can come from
a symmetric power Sym^n of a lower-order factor plus the top block.
The default profile admits no such factorization: every candidate
(n, base size) either leaves some power without an admissible base rank
or forces base ranks whose differences increase.
"""

import argparse

from pcurvature.nilprofile import (FactorizationHypothesis, RankProfile,
                                   feasibility_check)


def main():
    ap = argparse.ArgumentParser(
        description="test a rank profile for symmetric-power factorizations")
    ap.add_argument("--profile", default="23,17,11,6,3,0",
                    help="comma-separated ranks of the powers of the "
                         "nilpotent part, starting at power 0")
    ap.add_argument("--top", type=int, default=2,
                    help="size of the top Jordan block")
    args = ap.parse_args()
    profile = RankProfile(tuple(int(t) for t in args.profile.split(",")))
    result = feasibility_check(profile, FactorizationHypothesis(
        total_size=profile.ranks[0], top_block_size=args.top))
    word = "feasible" if result.feasible else "infeasible"
    print(f"profile {profile.ranks}, top block {args.top}: {word}")
    if result.witness is not None:
        n, base = result.witness
        print(f"witness: Sym^{n} of a base with rank profile {base}")
    for t in result.trace:
        extra = f" (forced {t.forced_profile})" if t.forced_profile else ""
        print(f"  n={t.n}, base size {t.base_size}: {t.reason}{extra}")


if __name__ == "__main__":
    main()
