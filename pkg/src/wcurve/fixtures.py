"""Built-in curve algebras with parametrized branch points.

Three families, each a multiplication table over Q[x] whose branch
parameters b_i (and extra scalars a_i where present) can be set freely as
rationals, subject only to the b_i being pairwise distinct:

* trigonal378:  r = 3, basis (1, y, w), value semigroup <3, 7, 8>
* pentagonal:   r = 5, basis (1, y, w, y^2, yw), value semigroup <5, 7, 11>
* sextic:       r = 6, basis (1, y13, y14, y15, y16, y29), value
                semigroup <6, 13, 14, 15, 16> (symmetric)

The defaults use small integer branch points so results are hand-checkable.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import CurveAlgebra
from .exactalg import Poly, rat
from .semigroup import NumericalSemigroup


class DuplicateBranchParam(ValueError):
    """Branch parameters must be pairwise distinct."""


_SPECS = {
    "trigonal378": {"b": 7, "a": 2},
    "pentagonal": {"b": 5, "a": 0},
    "sextic": {"b": 7, "a": 0},
}


def fixture_names() -> list:
    return list(_SPECS)


def default_params(name: str) -> dict:
    spec = _spec(name)
    params = {"b": tuple(Fraction(i) for i in range(1, spec["b"] + 1))}
    if spec["a"]:
        params["a"] = tuple(Fraction(1) for _ in range(spec["a"]))
    return params


def _spec(name: str) -> dict:
    if name not in _SPECS:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(_SPECS)}"
        )
    return _SPECS[name]


def _clean_params(name: str, params: dict | None) -> dict:
    spec = _spec(name)
    merged = default_params(name)
    if params:
        for key, vals in params.items():
            if key not in merged:
                raise KeyError(f"fixture {name!r} takes no parameter {key!r}")
            merged[key] = tuple(rat(v) for v in vals)
    if len(merged["b"]) != spec["b"]:
        raise ValueError(
            f"fixture {name!r} needs {spec['b']} branch parameters, "
            f"got {len(merged['b'])}"
        )
    if "a" in merged and len(merged["a"]) != spec["a"]:
        raise ValueError(
            f"fixture {name!r} needs {spec['a']} scalar parameters, "
            f"got {len(merged['a'])}"
        )
    b = merged["b"]
    if len(set(b)) != len(b):
        raise DuplicateBranchParam(
            f"branch parameters must be pairwise distinct, got {b}"
        )
    return merged


def _root_poly(roots) -> Poly:
    p = Poly.one()
    for root in roots:
        p = p * Poly([-root, 1])
    return p


def fixture(name: str, params: dict | None = None) -> CurveAlgebra:
    """Build one of the named curve algebras.

    params may override "b" (branch points, rationals or strings) and for
    trigonal378 also "a" (two scalars).  Missing keys keep their defaults.
    """
    params = _clean_params(name, params)
    if name == "trigonal378":
        return _trigonal378(params)
    if name == "pentagonal":
        return _pentagonal(params)
    return _sextic(params)


def _trigonal378(params: dict) -> CurveAlgebra:
    b = params["b"]
    a1, a2 = params["a"]
    k2 = _root_poly(b[0:2])
    k3 = _root_poly(b[2:5])
    k2t = _root_poly(b[5:7])
    z = Poly.zero()
    one = Poly.one()
    # y^2 = -a2 k2 k2t - a1 k2 y - k2 w,  yw = k2 k3,
    # w^2 = -a1 k2 k3 - k3 y - a2 k2t w
    table = [
        [(one, z, z), (z, one, z), (z, z, one)],
        [
            (z, one, z),
            (k2 * k2t * (-a2), k2 * (-a1), -k2),
            (k2 * k3, z, z),
        ],
        [
            (z, z, one),
            (k2 * k3, z, z),
            (k2 * k3 * (-a1), -k3, k2t * (-a2)),
        ],
    ]
    H = NumericalSemigroup([3, 7, 8])
    return CurveAlgebra.from_table(H, table, params=params)


def _pentagonal(params: dict) -> CurveAlgebra:
    b = params["b"]
    k2 = _root_poly(b[0:2])
    k3 = _root_poly(b[2:5])
    z = Poly.zero()
    one = Poly.one()

    def vec(**at):
        out = [z] * 5
        for pos, val in at.items():
            out[int(pos[1])] = val
        return tuple(out)

    # Basis (1, y, w, y^2, yw) with y^2 stored as its own basis slot:
    # y*w = yw, y*y^2 = k2 w, y*yw = k2 k3, w^2 = k3 y, w*y^2 = k2 k3,
    # w*yw = k3 y^2, y^2*y^2 = k2 yw, y^2*yw = k2 k3 y, yw*yw = k2 k3 w.
    table = [
        [vec(p0=one), vec(p1=one), vec(p2=one), vec(p3=one), vec(p4=one)],
        [
            vec(p1=one),
            vec(p3=one),
            vec(p4=one),
            vec(p2=k2),
            vec(p0=k2 * k3),
        ],
        [
            vec(p2=one),
            vec(p4=one),
            vec(p1=k3),
            vec(p0=k2 * k3),
            vec(p3=k3),
        ],
        [
            vec(p3=one),
            vec(p2=k2),
            vec(p0=k2 * k3),
            vec(p4=k2),
            vec(p1=k2 * k3),
        ],
        [
            vec(p4=one),
            vec(p0=k2 * k3),
            vec(p3=k3),
            vec(p1=k2 * k3),
            vec(p2=k2 * k3),
        ],
    ]
    H = NumericalSemigroup([5, 7, 11])
    return CurveAlgebra.from_table(H, table, params=params)


def _sextic(params: dict) -> CurveAlgebra:
    b = params["b"]
    k3 = _root_poly(b[0:3])
    k2 = _root_poly(b[3:5])
    k2h = _root_poly(b[5:7])
    z = Poly.zero()
    one = Poly.one()

    def vec(**at):
        out = [z] * 6
        for pos, val in at.items():
            out[int(pos[1])] = val
        return tuple(out)

    # Basis (1, y13, y14, y15, y16, y29).  Every product of two basis
    # elements is a single branch-polynomial multiple of one basis
    # element; the slot is forced by the residue of e_i + e_j mod 6 and
    # the weights all land exactly on the filtration top.
    t11 = vec(p2=k2h)  # y13^2   = k2h y14
    t12 = vec(p3=k2)  # y13 y14 = k2 y15
    t13 = vec(p4=k2h)  # y13 y15 = k2h y16
    t14 = vec(p5=one)  # y13 y16 = y29
    t15 = vec(p0=k2 * k2h * k3)
    t22 = vec(p4=k2)  # y14^2   = k2 y16
    t23 = vec(p5=one)  # y14 y15 = y29
    t24 = vec(p0=k2 * k3)
    t25 = vec(p1=k2 * k3)
    t33 = vec(p0=k2h * k3)
    t34 = vec(p1=k3)  # y15 y16 = k3 y13
    t35 = vec(p2=k2h * k3)
    t44 = vec(p2=k3)  # y16^2   = k3 y14
    t45 = vec(p3=k2 * k3)
    t55 = vec(p4=k2 * k2h * k3)
    rows = {
        (1, 1): t11,
        (1, 2): t12,
        (1, 3): t13,
        (1, 4): t14,
        (1, 5): t15,
        (2, 2): t22,
        (2, 3): t23,
        (2, 4): t24,
        (2, 5): t25,
        (3, 3): t33,
        (3, 4): t34,
        (3, 5): t35,
        (4, 4): t44,
        (4, 5): t45,
        (5, 5): t55,
    }
    table = [[None] * 6 for _ in range(6)]
    for j in range(6):
        table[0][j] = vec(**{f"p{j}": one})
        table[j][0] = table[0][j]
    for (i, j), v in rows.items():
        table[i][j] = v
        table[j][i] = v
    H = NumericalSemigroup([6, 13, 14, 15, 16])
    return CurveAlgebra.from_table(H, table, params=params)
