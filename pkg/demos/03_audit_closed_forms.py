"""Audit the published closed-form case expressions against the oracle.

The per-case resistance displays and the closed-form Kirchhoff indices are
evaluated verbatim from the small factors. Some of them disagree with the
brute-force value; the audit reports every such deviation instead of
silently correcting it. The smallest example: the three-vertex path, where
the closed-form Kirchhoff display evaluates to 1.5 while the true index
is 4.
"""

from pocket_kirch import PocketSpec, complete_graph, verify_construction

spec = PocketSpec(
    F=complete_graph(1),
    attach=(0,),
    H1=complete_graph(1),
    H2=complete_graph(1),
)

report = verify_construction(spec, label="three-vertex path")
print(report.to_table())
print()
print("Deviations of the printed values (never fatal; the block construction")
print("and the oracle are the ground truth):")
for rec in report.records:
    if rec.printed is not None and rec.printed_dev > 1e-9:
        print(
            f"  {rec.quantity:<8} case {rec.case}: printed {rec.printed:g}"
            f" vs oracle {rec.oracle:g}"
        )
