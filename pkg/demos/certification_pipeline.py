"""Run the complete certification pipeline on so_4 and walk through what it
checks: Yang-Baxter, the quotient relations, the skew inverse, the rank-one
contraction, the pairings and the conjugation lemma.

Run with:  python demos/certification_pipeline.py
"""

from bmwcert import TensorOperator, SYMBOLIC, build_standard, full_verification

F = SYMBOLIC

result = full_verification(build_standard("so", 4))

print("so_4 certification:", result.status)
print()
print("derived values:")
for key in ("N", "nu", "mu", "trace_C", "trace_D", "epsilon", "rank_K"):
    print(f"  {key} = {result.derived[key]}")
print()
print(f"{len(result.outcomes)} identity checks, each an exact zero residual:")
for outcome in result.outcomes:
    flag = "pass" if outcome.passed else "FAIL"
    print(f"  [{flag}] {outcome.id:24s} {outcome.equation}")

print()
# Feeding in something that is not of BMW type produces an honest partial
# report instead of a crash.  The identity operator has no skew inverse:
bad = full_verification(TensorOperator.identity(2, 2, F))
print("identity operator:", bad.status, "|", bad.aborted)
print("checks completed before the abort:", len(bad.outcomes))
