"""Matched pairs on the line, their bicrossed products, and factorization."""

from rbhom import build_bicrossed, check_factorization, check_matched_pair
from rbhom.catalog import idempotent_line, rb_idempotent_line, twisted_plane
from rbhom.linalg import vec_str
from rbhom.matched import MatchedPair

R, V = idempotent_line(), rb_idempotent_line("e2")
for point in [(1, 1, 0, 0), (0, 0, 1, 1), (1, 1, 1, 1)]:
    l, r, t_r, t_l = point
    mp = MatchedPair(R, V, [[(l,)]], [[(r,)]], [[(t_r,)]], [[(t_l,)]])
    rep = check_matched_pair(mp)
    if not rep.ok:
        print(point, "is not a matched pair:", sorted(rep.labels()))
        continue
    E = build_bicrossed(mp)
    back = check_factorization(E, [(1, 0)], [(0, 1)])
    print(point, "e1*e2 =", vec_str(E.mu[0][1]), " e2*e1 =", vec_str(E.mu[1][0]), " recovered:", back.pair == mp)

rep = check_factorization(twisted_plane(), [(1, 0)], [(0, 1)])
print("twisted plane through span{e1} and span{e2}:", rep.lines()[0])
