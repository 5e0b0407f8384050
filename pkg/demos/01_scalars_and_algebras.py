"""Exact arithmetic in Q(l) and the axiom checker on a small algebra."""

import dataclasses

from rbhom import LAMBDA as l, ONE, check_algebra, parse_scalar
from rbhom.catalog import twisted_plane

print("1/l + 1/(l+1) =", ONE / l + ONE / (l + 1))
print("(l^2-1)/(l+1) =", parse_scalar("(l^2-1)/(l+1)"))
print("value at l = 1:", (ONE / l + ONE / (l + 1)).eval(1))

E = twisted_plane()
print("\ntwisted plane:", "ok" if check_algebra(E).ok else "violations")

# bump a single structure constant and look at what breaks
mu = [[list(v) for v in row] for row in E.mu]
mu[1][1][0] = mu[1][1][0] + 1
bad = dataclasses.replace(E, mu=mu)
rep = check_algebra(bad)
print(f"after bumping e2*e2: {len(rep)} violations, first three:")
for line in rep.lines()[:3]:
    print("  ", line)
