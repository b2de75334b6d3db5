"""Why atomic cut matters for the full simulation base.

With only identity axioms, asserting the proxy of ``q & r`` does not give
``q``: the left rules can decompose the proxy on the left, but nothing moves
it from right to left. Atomic cut does exactly that.
"""

from seqbes import prop6_counterexample

report = prop6_counterexample()
print(report.to_text())
print("\nall facts as expected:", report.ok)
