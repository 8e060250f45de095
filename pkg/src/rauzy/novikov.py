"""The PL surface Σ^PL ⊂ T³ = R³/2Z³ and the foliation cut out by Ω_λ.

Σ̂^PL is the union of unit squares {i}×[j,j+1]×[k,k+1] (and permutations)
with j+k odd.  A face is stored as (d, corner): d is the normal axis and
corner is the lower integer corner with corner[d] = i.  Leaves are traced in
the lift R³ so that h(x) = g·x, g = (λ2+λ3, λ3+λ1, λ1+λ2), is an exact
audit: it is constant along every leaf.

The face orientation comes from a 2-colouring of the unit cubes: the normal
of a face points into the cube of colour 1 (colour = ab+bc+ca mod 2).  The
leaf direction on a face with normal σe_d is σe_d × g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import InputError, RauzyError, SimplexPoint, fmt_rational, normalize_projective
from .iet import IetMap


class DegenerateDirection(RauzyError, ValueError):
    pass


class HitSingularVertex(RauzyError):
    pass


class TransversalMisses(RauzyError):
    pass


Vec = tuple  # exact 3-vector of Fractions or ints


def _others(d: int) -> tuple[int, int]:
    a, b = [t for t in range(3) if t != d]
    return a, b


def _mod2(p) -> tuple[int, int, int]:
    return tuple(int(x) % 2 for x in p)


def cube_colour(c) -> int:
    a, b, cc = c
    return (a * b + b * cc + cc * a) % 2


def is_face(d: int, corner) -> bool:
    a, b = _others(d)
    return (corner[a] + corner[b]) % 2 == 1


def face_sigma(d: int, corner) -> int:
    """+1 if the face normal e_d points into the cube of colour 1."""
    return 1 if cube_colour(corner) == 1 else -1


def cross(u, v) -> Vec:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def gvec(lam: SimplexPoint) -> Vec:
    l1, l2, l3 = lam
    return (l2 + l3, l3 + l1, l1 + l2)


def faces_at_edge(axis: int, p) -> list[tuple[int, tuple]]:
    """Lifted faces containing the edge [p, p + e_axis]."""
    out = []
    for d in range(3):
        if d == axis:
            continue
        other = 3 - d - axis
        for off in (0, -1):
            base = list(p)
            base[other] = p[other] + off
            if is_face(d, base):
                out.append((d, tuple(base)))
    return out


@dataclass(frozen=True)
class Face:
    normal: int
    corner: tuple[int, int, int]

    @property
    def sigma(self) -> int:
        return face_sigma(self.normal, self.corner)

    def vertices(self) -> list[tuple[int, int, int]]:
        a, b = _others(self.normal)
        out = []
        for u, v in ((0, 0), (1, 0), (1, 1), (0, 1)):
            p = list(self.corner)
            p[a] += u
            p[b] += v
            out.append(tuple(p))
        return out

    def edges(self) -> list[tuple[int, tuple]]:
        a, b = _others(self.normal)
        c = self.corner
        out = []
        for axis, other in ((a, b), (b, a)):
            for off in (0, 1):
                p = list(c)
                p[other] += off
                out.append((axis, tuple(p)))
        return out

    def label(self) -> str:
        return f"x{self.normal + 1}={self.corner[self.normal]}:{''.join(map(str, self.corner))}"


@dataclass(frozen=True)
class FaceComplex:
    faces: tuple[Face, ...]
    edges: dict
    vertices: tuple
    euler: int
    genus: int
    orientable: bool
    vertex_links_closed: bool
    vertex_degrees: dict = field(default_factory=dict)

    def index(self, face: Face) -> int:
        return self.faces.index(Face(face.normal, _mod2(face.corner)))


def _edge_key(axis: int, p) -> tuple[int, tuple]:
    return axis, _mod2(p)


def _orientation_search(faces, edges) -> bool:
    """Propagate ±1 orientations face to face; True iff no edge is inconsistent."""
    sign = {faces[0]: 1}
    stack = [faces[0]]
    incident = {}
    for e, fs in edges.items():
        for f in fs:
            incident.setdefault(f, []).append(e)
    while stack:
        f = stack.pop()
        for e in incident[f]:
            g = [h for h in edges[e] if h != f][0]
            # the two faces must induce opposite boundary directions on e
            want = -sign[f] * _boundary_dir(f, e) * _boundary_dir(g, e)
            if g in sign:
                if sign[g] != want:
                    return False
            else:
                sign[g] = want
                stack.append(g)
    return len(sign) == len(faces)


def _boundary_dir(f: Face, e) -> int:
    """Sign of e_axis in the boundary orientation induced by the normal +e_d (as +1/−1)."""
    axis, p = e
    d = f.normal
    other = 3 - d - axis
    inward = [0, 0, 0]
    inward[other] = 1 if p[other] % 2 == f.corner[other] % 2 else -1
    n = [0, 0, 0]
    n[d] = 1
    t = cross(inward, n)
    return t[axis]


def build_pl_surface() -> FaceComplex:
    faces = []
    for d in range(3):
        for corner in itertools.product(range(2), repeat=3):
            if is_face(d, corner):
                faces.append(Face(d, corner))
    faces = tuple(faces)
    edges: dict = {}
    for f in faces:
        for axis, p in f.edges():
            edges.setdefault(_edge_key(axis, p), []).append(f)
    verts = set()
    for f in faces:
        verts.update(_mod2(v) for v in f.vertices())
    for e, fs in edges.items():
        if len(fs) != 2:
            raise AssertionError(f"edge {e} lies in {len(fs)} faces")
    # vertex links: edges at v joined through the faces at v
    closed = True
    degrees = {}
    for v in sorted(verts):
        link: dict = {}
        for f in faces:
            fv = [_mod2(w) for w in f.vertices()]
            if v not in fv:
                continue
            at = [e for e in f.edges() if v in (_mod2(e[1]), _mod2(_shift(e[1], e[0])))]
            ks = [_edge_key(*e) for e in at]
            link.setdefault(ks[0], []).append(ks[1])
            link.setdefault(ks[1], []).append(ks[0])
        degrees[v] = sum(len(x) for x in link.values()) // 2
        if any(len(x) != 2 for x in link.values()):
            closed = False
            continue
        start = next(iter(link))
        prev, cur, n = None, start, 0
        while True:
            nxt = [w for w in link[cur] if w != prev]
            prev, cur = cur, (nxt[0] if nxt else link[cur][0])
            n += 1
            if cur == start:
                break
        closed = closed and n == len(link)
    euler = len(verts) - len(edges) + len(faces)
    orientable = _orientation_search(list(faces), edges)
    genus = (2 - euler) // 2 if orientable else -1
    return FaceComplex(faces, {k: tuple(v) for k, v in edges.items()}, tuple(sorted(verts)), euler, genus,
                       orientable, closed, degrees)


def _shift(p, axis):
    q = list(p)
    q[axis] += 1
    return tuple(q)


def _as_lambda(lam) -> SimplexPoint:
    if isinstance(lam, SimplexPoint):
        return lam
    return normalize_projective(lam)


def _check_lambda(lam: SimplexPoint) -> None:
    if lam.is_vertex():
        raise DegenerateDirection(f"λ = {lam} is a vertex of Δ; leaves run along the edges")


def direction3(lam: SimplexPoint, d: int, corner) -> Vec:
    """Leaf direction σe_d × g on a lifted face."""
    g = gvec(lam)
    e = [0, 0, 0]
    e[d] = face_sigma(d, corner)
    return cross(e, g)


def leaf_direction(face: Face, lam) -> tuple[Fraction, Fraction]:
    """In-face direction (along the two non-normal axes, increasing order) of the leaves."""
    lam = _as_lambda(lam)
    _check_lambda(lam)
    v = direction3(lam, face.normal, face.corner)
    a, b = _others(face.normal)
    if v[a] == 0 and v[b] == 0:
        raise DegenerateDirection(f"direction vanishes on {face.label()}")
    return v[a], v[b]


def side_measures(face: Face, lam) -> tuple[Fraction, Fraction]:
    """Transverse measures |ω_λ| of the sides along the two in-face axes."""
    g = gvec(_as_lambda(lam))
    a, b = _others(face.normal)
    return g[a], g[b]


def _step(lam: SimplexPoint, face, p, sign: int = 1):
    """Move from p (in the closed lifted face) along ±direction to the boundary.

    Returns (q, axis, edge_start) with q on the edge [edge_start, edge_start + e_axis],
    or None if the segment ends at a vertex.
    """
    d, base = face
    v = direction3(lam, d, base)
    if sign < 0:
        v = tuple(-x for x in v)
    ts = []
    for a in range(3):
        if a == d or v[a] == 0:
            continue
        bound = base[a] + 1 if v[a] > 0 else base[a]
        t = (bound - p[a]) / v[a]
        if t > 0:
            ts.append((t, a))
    if not ts:
        raise AssertionError("point is not inside the face")
    t = min(ts)[0]
    q = tuple(Fraction(p[k]) + t * v[k] for k in range(3))
    hits = [a for tt, a in ts if tt == t]
    if len(hits) > 1 or any(x.denominator == 1 for k, x in enumerate(q) if k != d and k != hits[0]):
        return None
    axis = 3 - d - hits[0]
    start = [int(q[k]) if k != axis else base[axis] for k in range(3)]
    start[d] = base[d]
    return q, axis, tuple(start)


def _other_face(face, axis: int, start) -> tuple:
    fs = [f for f in faces_at_edge(axis, start) if f != face]
    if len(fs) != 1:
        raise AssertionError(f"edge {axis},{start} is not shared by exactly two faces")
    return fs[0]


def _enters(face, axis: int, start, v) -> bool:
    """Does direction v point into the lifted face from its edge (axis, start)?"""
    d, base = face
    a = 3 - d - axis
    return v[a] > 0 if start[a] == base[a] else v[a] < 0


@dataclass(frozen=True)
class Crossing:
    face: Face  # face entered, corner reduced mod 2
    point: tuple  # exact lifted point on the edge being crossed
    edge: tuple  # (axis, lifted start)


@dataclass
class LeafTrace:
    crossings: list
    periodic: bool
    period: Optional[int]
    faces_visited: frozenset
    height: Fraction  # g·x, constant along the leaf
    audit_ok: bool
    translation: Optional[tuple] = None  # lift displacement after one period

    def polyline(self) -> list:
        return [c.point for c in self.crossings]


def _parse_start(start, lam: SimplexPoint):
    """(face index or Face, (u, v)) → lifted face and point in its interior or boundary."""
    face, (u, v) = start
    if isinstance(face, int):
        face = build_pl_surface().faces[face]
    a, b = _others(face.normal)
    p = list(map(Fraction, face.corner))
    p[a] += Fraction(u)
    p[b] += Fraction(v)
    if not (0 <= u <= 1 and 0 <= v <= 1):
        raise InputError("in-face coordinates must lie in [0,1]")
    if u in (0, 1) and v in (0, 1):
        raise HitSingularVertex("start point is a vertex")
    return (face.normal, face.corner), tuple(p)


def trace_pl_leaf(lam, start, max_crossings: int = 1000) -> LeafTrace:
    """Trace the leaf through ``start = (face, (u, v))`` forward across up to max_crossings edges.

    The leaf closes when a crossing repeats modulo 2Z³.  HitSingularVertex is
    raised when the leaf runs into a vertex.
    """
    lam = _as_lambda(lam)
    _check_lambda(lam)
    g = gvec(lam)
    face, p = _parse_start(start, lam)
    h0 = sum(g[k] * p[k] for k in range(3))
    crossings: list[Crossing] = []
    seen: dict = {}
    visited = {Face(face[0], _mod2(face[1]))}
    audit = True
    period = None
    translation = None
    for n in range(max_crossings):
        r = _step(lam, face, p)
        if r is None:
            raise HitSingularVertex(f"leaf hits a vertex after {n} crossings")
        q, axis, st = r
        nxt = _other_face(face, axis, st)
        if not _enters(nxt, axis, st, direction3(lam, *nxt)):
            audit = False
        h = sum(g[k] * q[k] for k in range(3))
        audit = audit and h == h0
        c = Crossing(Face(nxt[0], _mod2(nxt[1])), q, (axis, st))
        key = (c.face, tuple(x % 2 for x in q))
        if key in seen:
            period = n - seen[key]
            first = crossings[seen[key]].point
            translation = tuple(int(q[k] - first[k]) for k in range(3))
            crossings.append(c)
            break
        seen[key] = n
        crossings.append(c)
        visited.add(c.face)
        face, p = nxt, q
    return LeafTrace(crossings, period is not None, period, frozenset(visited), h0, audit, translation)


# -- transversal and first return ------------------------------------------------------------

DEFAULT_CYCLE_START = (1, 0, 0)
DEFAULT_CYCLE_STEPS = (1, 0, 2, 1, 0, 2)


@dataclass(frozen=True)
class EdgeCycle:
    """A closed edge path used as transversal, parametrised by cumulative ω_λ-length."""

    edges: tuple  # ((axis, lifted start), ...)
    offsets: tuple  # cumulative parameter at each edge start
    total: Fraction

    def locate(self, s: Fraction):
        s = s % self.total
        for (axis, p), s0, s1 in zip(self.edges, self.offsets, self.offsets[1:] + (self.total,)):
            if s0 <= s < s1:
                return axis, p, (s - s0) / (s1 - s0)
        raise AssertionError(s)


def edge_cycle(lam, start=DEFAULT_CYCLE_START, steps=DEFAULT_CYCLE_STEPS) -> EdgeCycle:
    lam = _as_lambda(lam)
    g = gvec(lam)
    p = list(start)
    edges, offs = [], []
    s = Fraction(0)
    for a in steps:
        edges.append((a, tuple(p)))
        offs.append(s)
        s += g[a]
        p[a] += 1
    if _mod2(p) != _mod2(start):
        raise InputError("edge path does not close up in T³")
    keys = [_edge_key(a, q) for a, q in edges]
    if len(set(keys)) != len(keys):
        raise InputError("edge path repeats an edge")
    return EdgeCycle(tuple(edges), tuple(offs), s)


def _cycle_index(cyc: EdgeCycle) -> dict:
    return {_edge_key(a, p): (p, s0) for (a, p), s0 in zip(cyc.edges, cyc.offsets)}


def _hit_parameter(lam, cyc_idx, axis, st, q) -> Optional[Fraction]:
    key = _edge_key(axis, st)
    if key not in cyc_idx:
        return None
    _, s0 = cyc_idx[key]
    return s0 + gvec(lam)[axis] * (q[axis] - st[axis])


def first_return(lam, cyc: EdgeCycle, s, max_crossings: int = 10000) -> tuple[Fraction, int, frozenset]:
    """First return of the leaf leaving the transversal at parameter s; (s', crossings, faces)."""
    lam = _as_lambda(lam)
    g = gvec(lam)
    idx = _cycle_index(cyc)
    axis, p, t = cyc.locate(Fraction(s))
    if t == 0:
        raise HitSingularVertex("parameter is a vertex of the edge cycle")
    q = list(map(Fraction, p))
    q[axis] += t
    cand = [f for f in faces_at_edge(axis, p) if _enters(f, axis, p, direction3(lam, *f))]
    if len(cand) != 1:
        raise TransversalMisses(f"edge {axis},{p} is not transverse to the foliation")
    face = cand[0]
    visited = {Face(face[0], _mod2(face[1]))}
    q = tuple(q)
    for n in range(1, max_crossings + 1):
        r = _step(lam, face, q)
        if r is None:
            raise HitSingularVertex(f"leaf from s={s} hits a vertex")
        q, axis, st = r
        hit = _hit_parameter(lam, idx, axis, st, q)
        if hit is not None:
            return hit, n, frozenset(visited)
        face = _other_face(face, axis, st)
        visited.add(Face(face[0], _mod2(face[1])))
    raise TransversalMisses(f"no return within {max_crossings} crossings")


def _backward_hits(lam: SimplexPoint, cyc: EdgeCycle, max_crossings: int) -> set:
    """Parameters on the transversal whose forward leaf runs into a vertex before returning."""
    idx = _cycle_index(cyc)
    out = set()
    for v in itertools.product(range(2), repeat=3):
        for d in range(3):
            a, b = _others(d)
            for da, db in itertools.product((0, -1), repeat=2):
                base = list(v)
                base[a] += da
                base[b] += db
                if not is_face(d, base):
                    continue
                face = (d, tuple(base))
                w = direction3(lam, d, base)
                # the leaf reaches v moving forward iff −w points into the face at v
                inside = all((w[k] < 0) == (v[k] == base[k]) or w[k] == 0 for k in (a, b))
                if not inside or (w[a] == 0 and w[b] == 0):
                    continue
                q = tuple(map(Fraction, v))
                for _ in range(max_crossings):
                    r = _step(lam, face, q, sign=-1)
                    if r is None:
                        break
                    q, axis, st = r
                    hit = _hit_parameter(lam, idx, axis, st, q)
                    if hit is not None:
                        out.add(hit % cyc.total)
                        break
                    face = _other_face(face, axis, st)
    return out


@dataclass(frozen=True)
class Piece:
    start: Fraction
    length: Fraction
    offset: Fraction  # image = start + offset (mod total)


@dataclass
class ExtractedExchange:
    total: Fraction
    pieces: tuple  # Piece, starting at the transversal origin
    max_return: int
    faces_hit: frozenset

    def __call__(self, s) -> Fraction:
        s = Fraction(s) % self.total
        for pc in self.pieces:
            if (s - pc.start) % self.total < pc.length:
                return (s + pc.offset) % self.total
        raise AssertionError


def _merge(pieces: list, total: Fraction) -> list:
    pieces = [p for p in pieces if p.length > 0]
    out: list = []
    for p in pieces:
        if out and out[-1].offset == p.offset and (out[-1].start + out[-1].length) % total == p.start % total:
            last = out.pop()
            out.append(Piece(last.start, last.length + p.length, p.offset))
        else:
            out.append(p)
    if len(out) > 1 and out[0].offset == out[-1].offset and (out[-1].start + out[-1].length) % total == out[0].start:
        last = out.pop()
        out[0] = Piece(last.start, last.length + out[0].length, last.offset)
    return out


def extract_exchange(lam, cyc: Optional[EdgeCycle] = None, max_crossings: int = 10000) -> ExtractedExchange:
    """Exact first-return exchange on the transversal.

    Breakpoints are the transversal points whose leaf runs into a vertex
    (found by tracing backward out of every vertex) and the vertices of the
    edge cycle.  On each complementary arc the return is a translation; it is
    evaluated at two interior points as a check.
    """
    lam = _as_lambda(lam)
    _check_lambda(lam)
    cyc = cyc or edge_cycle(lam)
    L = cyc.total
    bps = _backward_hits(lam, cyc, max_crossings) | {s % L for s in cyc.offsets}
    bps = sorted(bps)
    pieces = []
    faces = set()
    worst = 0
    for k, a in enumerate(bps):
        b = bps[k + 1] if k + 1 < len(bps) else bps[0] + L
        offs = set()
        for frac in (Fraction(1, 2), Fraction(1, 3)):
            s = a + (b - a) * frac
            img, n, fv = first_return(lam, cyc, s % L, max_crossings)
            offs.add((img - s) % L)
            faces |= fv
            worst = max(worst, n)
        if len(offs) != 1:
            raise AssertionError("return map is not a translation between consecutive breakpoints")
        pieces.append(Piece(a, b - a, offs.pop()))
    if len(faces) < 12:
        raise TransversalMisses(f"returning leaves cross only {len(faces)} of 12 faces")
    return ExtractedExchange(L, tuple(_merge(pieces, L)), worst, frozenset(faces))


def _target_pieces(lam: SimplexPoint, L: Fraction) -> list:
    T = IetMap(lam)
    bp = T.breakpoints
    return [Piece(L * bp[k], L * (bp[k + 1] - bp[k]), (L * T.offsets[k]) % L) for k in range(6)]


def _conjugate(target: list, r: Fraction, reflect: bool, L: Fraction) -> list:
    """Pieces of φ⁻¹∘T4∘φ where φ(s) = s + r, or φ(s) = r − s if reflect."""
    out = []
    for p in target:
        if p.length == 0:
            continue
        if not reflect:
            out.append(Piece((p.start - r) % L, p.length, p.offset))
        else:
            out.append(Piece((r - p.start - p.length) % L, p.length, (-p.offset) % L))
    return out


def _canon(pieces) -> frozenset:
    return frozenset((p.start, p.length, p.offset) for p in pieces)


@dataclass
class MatchReport:
    lam: SimplexPoint
    match: bool
    rotation: Optional[Fraction]
    reflected: Optional[bool]
    predicted_rotation: Fraction
    rotation_as_predicted: Optional[bool]
    scale: Fraction
    length_vector: Optional[tuple]  # extracted lengths / scale in the order of T^AR's branches
    extracted: ExtractedExchange
    witnesses: list

    def to_json(self) -> dict:
        f = fmt_rational
        return {
            "lambda": str(self.lam),
            "verdict": "Match" if self.match else "NoMatch",
            "rotation": None if self.rotation is None else f(self.rotation),
            "reflected": self.reflected,
            "predicted_rotation": f(self.predicted_rotation),
            "rotation_as_predicted": self.rotation_as_predicted,
            "scale": f(self.scale),
            "length_vector": None if self.length_vector is None else [f(x) for x in self.length_vector],
            "pieces": [[f(p.start), f(p.length), f(p.offset)] for p in self.extracted.pieces],
            "witnesses": [[f(r), refl] for r, refl in self.witnesses],
            "max_return_crossings": self.extracted.max_return,
        }


def first_return_iet(lam, cyc: Optional[EdgeCycle] = None, max_crossings: int = 10000) -> MatchReport:
    """Extract the first-return exchange on the edge cycle and search for a conjugacy to L·T^AR_λ(·/L).

    Candidate conjugacies are rotations s ↦ s + r and reflections s ↦ r − s of
    the transversal circle; r ranges over the values that send a breakpoint
    of the target to a breakpoint of the extracted map, so the search is exhaustive.
    """
    lam = _as_lambda(lam)
    ex = extract_exchange(lam, cyc, max_crossings)
    L = ex.total
    target = _target_pieces(lam, L)
    have = _canon(ex.pieces)
    live = [p for p in target if p.length > 0]
    witnesses = []
    for reflect in (False, True):
        for pc in ex.pieces:
            a0 = live[0]
            r = (a0.start - pc.start) % L if not reflect else (pc.start + a0.length + a0.start) % L
            if _canon(_conjugate(target, r, reflect, L)) == have:
                witnesses.append((r, reflect))
    witnesses = sorted(set(witnesses), key=lambda w: (w[1], w[0]))
    l1, l2, l3 = lam
    predicted = (1 + 3 * l1 + 2 * l2) % L
    if not witnesses:
        return MatchReport(lam, False, None, None, predicted, None, L, None, ex, [])
    r, refl = witnesses[0]
    for w in witnesses:
        if w == (predicted, False):
            r, refl = w
    conj = _conjugate(target, r, refl, L)
    lengths = tuple(p.length / L for p in conj)
    return MatchReport(lam, True, r, refl, predicted, (r, refl) == (predicted, False), L, lengths, ex, witnesses)


# -- symmetries --------------------------------------------------------------------------------

def _translate_face(f: Face) -> tuple[Face, int]:
    c = tuple((x + 1) % 2 for x in f.corner)
    return Face(f.normal, c), 1


def _negate_face(f: Face) -> tuple[Face, int]:
    d = f.normal
    c = [(-x - 1) % 2 for x in f.corner]
    c[d] = (-f.corner[d]) % 2
    return Face(d, tuple(c)), -1


@dataclass
class SymmetryReport:
    faces_preserved: dict
    leaves_preserved: dict
    orientation_sign: dict  # +1 if dφ maps leaf directions to leaf directions, −1 if reversed

    @property
    def ok(self) -> bool:
        return all(self.faces_preserved.values()) and all(self.leaves_preserved.values())


def symmetry_check(lam, complex_: Optional[FaceComplex] = None) -> SymmetryReport:
    """Check that x ↦ x+(1,1,1), x ↦ −x and their composition preserve faces and leaves."""
    lam = _as_lambda(lam)
    cx = complex_ or build_pl_surface()
    faces = set(cx.faces)
    maps = {
        "translate": lambda f: _translate_face(f),
        "negate": lambda f: _negate_face(f),
        "both": lambda f: (_negate_face(_translate_face(f)[0])[0], -1),
    }
    fp, lp, osign = {}, {}, {}
    for name, m in maps.items():
        images = [m(f) for f in cx.faces]
        fp[name] = {im for im, _ in images} == faces
        signs = set()
        ok = True
        for f, (im, lin) in zip(cx.faces, images):
            v = direction3(lam, f.normal, f.corner)
            w = direction3(lam, im.normal, im.corner)
            dv = tuple(lin * x for x in v)
            if dv == w:
                signs.add(1)
            elif dv == tuple(-x for x in w):
                signs.add(-1)
            else:
                ok = False
        lp[name] = ok and len(signs) == 1
        osign[name] = signs.pop() if len(signs) == 1 else 0
    return SymmetryReport(fp, lp, osign)


# -- rendering ----------------------------------------------------------------------------------

def _project(p) -> tuple[float, float]:
    x, y, z = (float(t) for t in p)
    return (200 + 90 * (x - y) * 0.866, 330 - 90 * (z + (x + y) * 0.5))


def render_svg(lam, leaves: Sequence = (), out=None, max_crossings: int = 200) -> str:
    """SVG of the 12 faces in the cube [0,2]³ with optional traced leaves (start tuples).

    Faces are drawn at their representative corner in {0,1}³; leaf polylines
    are reduced mod 2 segment by segment.
    """
    lam = _as_lambda(lam)
    cx = build_pl_surface()
    lines = ['<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" viewBox="0 0 400 400">',
             f'<!-- lambda {lam} -->']
    shades = ("#d8e4f0", "#e8dcc8", "#d4ecd4")
    for i, f in enumerate(cx.faces):
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(_project, f.vertices()))
        lines.append(f'<polygon points="{pts}" fill="{shades[f.normal]}" fill-opacity="0.6" '
                     f'stroke="#444" stroke-width="0.6"><title>{i} {f.label()}</title></polygon>')
    for start in leaves:
        tr = trace_pl_leaf(lam, start, max_crossings)
        face, p = _parse_start(start, lam)
        prev = p
        for c in tr.crossings:
            lo = [min(prev[k], c.point[k]) for k in range(3)]
            shift = [2 * ((lo[k]) // 2) for k in range(3)]
            a = tuple(prev[k] - shift[k] for k in range(3))
            b = tuple(c.point[k] - shift[k] for k in range(3))
            (x0, y0), (x1, y1) = _project(a), _project(b)
            lines.append(f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
                         'stroke="#b22" stroke-width="0.8"/>')
            prev = c.point
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
