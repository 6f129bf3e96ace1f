"""Knot descriptions, planar diagrams, and the bundled data tables.

A planar diagram (PD) is a list of crossings ``(a, b, c, d)`` listing
the four incident arc labels counterclockwise, starting from the
incoming under-strand arc.  The under-strand runs a -> c; the
over-strand occupies b and d.

Knots enter through a small grammar:

    torus:a,b | pretzel:-2,3,p | alt:c+,c-,|A|,|B| | pd:[...] | name:<key>

with an optional ``mirror:`` prefix.  Mirrors are structural: a mirror
torus knot is Torus(a, -b), any other spec carries a flag.
"""

import os
import re
from fractions import Fraction
from math import gcd

__all__ = [
    "Torus", "Pretzel237", "AlternatingData", "Diagram", "Named",
    "parse_knot", "DiagramStats", "validate_pd", "mirror_pd",
    "smoothing_counts", "braid_pd", "pretzel_pd", "torus_pd",
    "two_bridge_pd", "INFINITY", "load_slope_db", "load_knot_table",
    "bundled_slope_db", "bundled_knot_table", "boundary_slopes_for",
]

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


# ---------------------------------------------------------------------------
# knot specifications


class Torus:
    """The (a,b) torus knot; a negative b denotes the mirror image."""

    def __init__(self, a, b):
        if gcd(a, abs(b)) != 1:
            raise ValueError("torus parameters must be coprime: (%d,%d)" % (a, b))
        if a < 2 or abs(b) < 2:
            raise ValueError("torus parameters must be at least 2 in magnitude")
        self.a = a
        self.b = b

    def render(self):
        return "torus:%d,%d" % (self.a, self.b)

    def __eq__(self, other):
        return isinstance(other, Torus) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash(("torus", self.a, self.b))

    def __repr__(self):
        return "Torus(%d, %d)" % (self.a, self.b)


class Pretzel237:
    """The (-2, 3, p) pretzel knot for odd p."""

    def __init__(self, p, mirror=False):
        if p % 2 == 0:
            raise ValueError("pretzel parameter p must be odd, got %d" % p)
        self.p = p
        self.mirror = mirror

    def render(self):
        base = "pretzel:-2,3,%d" % self.p
        return ("mirror:" + base) if self.mirror else base

    def __eq__(self, other):
        return (isinstance(other, Pretzel237)
                and (self.p, self.mirror) == (other.p, other.mirror))

    def __hash__(self):
        return hash(("pretzel237", self.p, self.mirror))

    def __repr__(self):
        return "Pretzel237(%d%s)" % (self.p, ", mirror" if self.mirror else "")


class AlternatingData:
    """Crossing and smoothing-circle counts of a reduced alternating diagram."""

    def __init__(self, c_plus, c_minus, a_circles, b_circles, mirror=False):
        if min(c_plus, c_minus) < 0 or min(a_circles, b_circles) < 1:
            raise ValueError("counts out of range")
        if a_circles + b_circles != c_plus + c_minus + 2:
            raise ValueError(
                "|A|+|B| must equal c+2: got %d+%d != %d+2"
                % (a_circles, b_circles, c_plus + c_minus))
        self.c_plus = c_plus
        self.c_minus = c_minus
        self.a_circles = a_circles
        self.b_circles = b_circles
        self.mirror = mirror

    def mirrored(self):
        """Alternating data of the mirror image (A and B roles swap)."""
        return AlternatingData(self.c_minus, self.c_plus,
                               self.b_circles, self.a_circles)

    def render(self):
        base = "alt:%d,%d,%d,%d" % (self.c_plus, self.c_minus,
                                    self.a_circles, self.b_circles)
        return ("mirror:" + base) if self.mirror else base

    def __eq__(self, other):
        return (isinstance(other, AlternatingData)
                and (self.c_plus, self.c_minus, self.a_circles,
                     self.b_circles, self.mirror)
                == (other.c_plus, other.c_minus, other.a_circles,
                    other.b_circles, other.mirror))

    def __hash__(self):
        return hash(("alt", self.c_plus, self.c_minus,
                     self.a_circles, self.b_circles, self.mirror))

    def __repr__(self):
        return "AlternatingData(c+=%d, c-=%d, |A|=%d, |B|=%d%s)" % (
            self.c_plus, self.c_minus, self.a_circles, self.b_circles,
            ", mirror" if self.mirror else "")


class Diagram:
    """An explicit planar diagram."""

    def __init__(self, pd, mirror=False):
        self.pd = validate_pd(pd)
        self.mirror = mirror

    def resolved_pd(self):
        return mirror_pd(self.pd) if self.mirror else self.pd

    def render(self):
        base = "pd:[%s]" % ",".join("(%d,%d,%d,%d)" % x for x in self.pd)
        return ("mirror:" + base) if self.mirror else base

    def __eq__(self, other):
        return (isinstance(other, Diagram)
                and (self.pd, self.mirror) == (other.pd, other.mirror))

    def __hash__(self):
        return hash(("pd", self.pd, self.mirror))

    def __repr__(self):
        return "Diagram(%d crossings%s)" % (len(self.pd),
                                            ", mirror" if self.mirror else "")


class Named:
    """A knot resolved through the bundled table."""

    def __init__(self, name, mirror=False):
        if name not in bundled_knot_table():
            raise ValueError("unknown knot name %r" % name)
        self.name = name
        self.mirror = mirror

    def resolved_pd(self):
        pd = bundled_knot_table()[self.name]
        return mirror_pd(pd) if self.mirror else pd

    def render(self):
        base = "name:" + self.name
        return ("mirror:" + base) if self.mirror else base

    def __eq__(self, other):
        return (isinstance(other, Named)
                and (self.name, self.mirror) == (other.name, other.mirror))

    def __hash__(self):
        return hash(("name", self.name, self.mirror))

    def __repr__(self):
        return "Named(%s%s)" % (self.name, ", mirror" if self.mirror else "")


_PD_TUPLE_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_knot(text):
    """Parse a knot specification string into a spec object."""
    s = text.strip()
    mirror = False
    if s.startswith("mirror:"):
        mirror = True
        s = s[len("mirror:"):]
    if s.startswith("torus:"):
        body = s[len("torus:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError("torus spec needs two parameters: %r" % text)
        a, b = int(parts[0]), int(parts[1])
        return Torus(a, -b if mirror else b)
    if s.startswith("pretzel:"):
        body = s[len("pretzel:"):]
        parts = [int(x) for x in body.split(",")]
        if len(parts) != 3 or parts[0] != -2 or parts[1] != 3:
            raise ValueError("only the (-2,3,p) pretzel family is supported: %r" % text)
        return Pretzel237(parts[2], mirror=mirror)
    if s.startswith("alt:"):
        body = s[len("alt:"):]
        parts = [int(x) for x in body.split(",")]
        if len(parts) != 4:
            raise ValueError("alt spec needs c+,c-,|A|,|B|: %r" % text)
        return AlternatingData(*parts, mirror=mirror)
    if s.startswith("pd:"):
        body = s[len("pd:"):].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("pd spec must be bracketed: %r" % text)
        inner = body[1:-1].strip()
        tuples = []
        if inner:
            pos = 0
            while pos < len(inner):
                m = _PD_TUPLE_RE.match(inner, pos)
                if not m:
                    raise ValueError("malformed pd tuple at %r" % inner[pos:])
                tuples.append(tuple(int(g) for g in m.groups()))
                pos = m.end()
                while pos < len(inner) and inner[pos] in ", ":
                    pos += 1
        return Diagram(tuple(tuples), mirror=mirror)
    if s.startswith("name:"):
        return Named(s[len("name:"):], mirror=mirror)
    raise ValueError("unrecognized knot spec %r" % text)


# ---------------------------------------------------------------------------
# planar diagram validation and statistics


class DiagramStats:
    """Signed crossing counts and smoothing-circle counts of a diagram."""

    def __init__(self, c_plus, c_minus, a_circles, b_circles):
        self.c_plus = c_plus
        self.c_minus = c_minus
        self.writhe = c_plus - c_minus
        self.a_circles = a_circles
        self.b_circles = b_circles

    def __repr__(self):
        return ("DiagramStats(c+=%d, c-=%d, w=%d, |A|=%d, |B|=%d)"
                % (self.c_plus, self.c_minus, self.writhe,
                   self.a_circles, self.b_circles))

    def __eq__(self, other):
        return (isinstance(other, DiagramStats)
                and (self.c_plus, self.c_minus, self.a_circles, self.b_circles)
                == (other.c_plus, other.c_minus, other.a_circles, other.b_circles))


def _arc_endpoints(pd):
    """Map each arc label to its two (crossing, slot) endpoints."""
    ends = {}
    for ci, cr in enumerate(pd):
        if len(cr) != 4:
            raise ValueError("crossing %d does not have four arcs" % ci)
        for slot, arc in enumerate(cr):
            ends.setdefault(arc, []).append((ci, slot))
    for arc, lst in ends.items():
        if len(lst) != 2:
            raise ValueError("arc %d appears %d times, expected 2" % (arc, len(lst)))
    return ends


def _component_walk(pd, ends):
    """Walk the strand from crossing 0; return the entry slot used at each
    crossing visit as a dict {(crossing, entry_slot): order}."""
    entries = {}
    # start on the under-strand of crossing 0, entering at slot 0
    ci, entry = 0, 0
    for step in range(2 * len(pd) + 1):
        if (ci, entry) in entries:
            if (ci, entry) != (0, 0):
                raise ValueError("strand walk closed early: not a single component")
            break
        entries[(ci, entry)] = step
        exit_slot = (entry + 2) % 4
        arc = pd[ci][exit_slot]
        (c1, s1), (c2, s2) = _arc_endpoints_pair(ends, arc)
        if (c1, s1) == (ci, exit_slot):
            ci, entry = c2, s2
        else:
            ci, entry = c1, s1
    if len(entries) != 2 * len(pd):
        raise ValueError("diagram has more than one component")
    return entries


def _arc_endpoints_pair(ends, arc):
    lst = ends[arc]
    return lst[0], lst[1]


def validate_pd(pd):
    """Check a PD code and return it as a tuple of 4-tuples.

    Requirements: every arc appears exactly twice, the diagram is a
    single closed component, the walk enters every under-strand at
    slot 0 (the PD orientation convention), and the rotation system is
    planar by the Euler formula.
    """
    pd = tuple(tuple(int(x) for x in cr) for cr in pd)
    if not pd:
        return pd  # the 0-crossing unknot
    ends = _arc_endpoints(pd)
    if len(ends) != 2 * len(pd):
        raise ValueError("a knot diagram with %d crossings needs %d arcs"
                         % (len(pd), 2 * len(pd)))
    entries = _component_walk(pd, ends)
    for (ci, entry) in entries:
        if entry == 2:
            raise ValueError(
                "crossing %d is entered at the outgoing under slot; "
                "arc direction violates the PD convention" % ci)
    # planarity: count faces of the rotation system
    faces = 0
    seen = set()
    for arc in ends:
        for start in range(2):
            if (arc, start) in seen:
                continue
            a, t = arc, start
            while (a, t) not in seen:
                seen.add((a, t))
                ci, slot = ends[a][t]
                nslot = (slot + 1) % 4
                narc = pd[ci][nslot]
                (c1, s1), (c2, s2) = _arc_endpoints_pair(ends, narc)
                if (c1, s1) == (ci, nslot):
                    a, t = narc, 1
                else:
                    a, t = narc, 0
            faces += 1
    v, e = len(pd), 2 * len(pd)
    if v - e + faces != 2:
        raise ValueError("diagram is not planar: V-E+F = %d" % (v - e + faces))
    return pd


def mirror_pd(pd):
    """Mirror image: switch over/under at every crossing.

    Rotating each tuple by one slot swaps the strand roles while keeping
    the counterclockwise reading; the result is re-canonicalized so the
    incoming under-strand sits in the first slot again.
    """
    rotated = [(b, c, d, a) for (a, b, c, d) in pd]
    return canonical_pd(rotated)


def canonical_pd(pd):
    """Rotate crossing tuples so each lists its incoming under-arc first.

    Accepts tuples whose under-strand occupies slots 0 and 2 in either
    direction, walks the component once, and rotates by two slots where
    the walk enters at slot 2.
    """
    pd = tuple(tuple(int(x) for x in cr) for cr in pd)
    if not pd:
        return pd
    ends = _arc_endpoints(pd)
    entries = {}
    ci, entry = 0, 0
    for step in range(2 * len(pd) + 1):
        if (ci, entry) in entries:
            break
        entries[(ci, entry)] = step
        exit_slot = (entry + 2) % 4
        arc = pd[ci][exit_slot]
        (c1, s1), (c2, s2) = _arc_endpoints_pair(ends, arc)
        if (c1, s1) == (ci, exit_slot):
            ci, entry = c2, s2
        else:
            ci, entry = c1, s1
    if len(entries) != 2 * len(pd):
        raise ValueError("diagram has more than one component")
    fixed = []
    for ci, cr in enumerate(pd):
        if (ci, 0) in entries:
            fixed.append(cr)
        elif (ci, 2) in entries:
            fixed.append((cr[2], cr[3], cr[0], cr[1]))
        else:
            raise ValueError("walk never entered the under-strand of crossing %d" % ci)
    return validate_pd(tuple(fixed))


def smoothing_counts(pd):
    """Crossing signs and A/B smoothing circle counts for a diagram.

    The A smoothing joins the counterclockwise-adjacent arc pairs
    (slots 0,1) and (slots 2,3); the B smoothing joins (1,2) and (3,0).
    A crossing is positive when the strand walk traverses its over-strand
    from the fourth listed arc to the second.
    """
    pd = validate_pd(pd)
    if not pd:
        return DiagramStats(0, 0, 1, 1)
    ends = _arc_endpoints(pd)
    entries = _component_walk(pd, ends)
    c_plus = c_minus = 0
    for ci in range(len(pd)):
        if (ci, 3) in entries:
            c_plus += 1
        elif (ci, 1) in entries:
            c_minus += 1
        else:
            raise ValueError("crossing %d has no over-strand entry" % ci)
    a_circles = _circle_count(pd, ((0, 1), (2, 3)))
    b_circles = _circle_count(pd, ((1, 2), (3, 0)))
    return DiagramStats(c_plus, c_minus, a_circles, b_circles)


def _circle_count(pd, pairing):
    arcs = sorted({arc for cr in pd for arc in cr})
    parent = {a: a for a in arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for cr in pd:
        for i, j in pairing:
            union(cr[i], cr[j])
    return len({find(a) for a in arcs})


def is_alternating(pd):
    """True when the strand walk alternates under and over passes."""
    pd = validate_pd(pd)
    if not pd:
        return False
    ends = _arc_endpoints(pd)
    entries = _component_walk(pd, ends)
    order = {step: slot for (ci, slot), step in entries.items()}
    kinds = [0 if order[s] == 0 else 1 for s in range(len(order))]
    return all(kinds[i] != kinds[(i + 1) % len(kinds)] for i in range(len(kinds)))


# ---------------------------------------------------------------------------
# diagram generators

class _Builder:
    """Accumulates crossings over provisional arc tokens, then resolves
    token identifications into a canonical PD."""

    def __init__(self):
        self.crossings = []
        self.parent = []

    def token(self):
        t = len(self.parent)
        self.parent.append(t)
        return t

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def crossing(self, a, b, c, d):
        self.crossings.append((a, b, c, d))

    def finish(self):
        labels = {}
        out = []
        for cr in self.crossings:
            resolved = []
            for t in cr:
                r = self.find(t)
                if r not in labels:
                    labels[r] = len(labels) + 1
                resolved.append(labels[r])
            out.append(tuple(resolved))
        return canonical_pd(out)


def _twist_pair(builder, left, right, count):
    """Run ``abs(count)`` crossings between two downward strands.

    Positive count gives positive crossings: the left strand dives
    under toward the lower right.  Returns the outgoing (left, right)
    tokens.
    """
    for _ in range(abs(count)):
        out_l = builder.token()
        out_r = builder.token()
        if count > 0:
            # incoming under at NW (left): CCW order NW, SW, SE, NE
            builder.crossing(left, out_l, out_r, right)
        else:
            # incoming under at NE (right): CCW order NE, NW, SW, SE
            builder.crossing(right, left, out_l, out_r)
        left, right = out_l, out_r
    return left, right


def braid_pd(word, strands):
    """Trace closure of a braid word on the given number of strands.

    The word is a list of nonzero generator indices: ``+i`` crosses
    strands i and i+1 positively (left strand under), ``-i``
    negatively.
    """
    b = _Builder()
    tops = [b.token() for _ in range(strands)]
    cur = list(tops)
    touched = [False] * strands
    for g in word:
        i = abs(g) - 1
        if not (0 <= i < strands - 1):
            raise ValueError("generator %d out of range for %d strands" % (g, strands))
        cur[i], cur[i + 1] = _twist_pair(b, cur[i], cur[i + 1],
                                         1 if g > 0 else -1)
        touched[i] = touched[i + 1] = True
    if not all(touched):
        raise ValueError("closure has a free loop: some strand is never crossed")
    for j in range(strands):
        b.union(cur[j], tops[j])
    return b.finish()


def torus_pd(a, b_param):
    """Standard diagram of the (a,b) torus knot as a closed braid."""
    if gcd(a, abs(b_param)) != 1:
        raise ValueError("torus parameters must be coprime")
    word = []
    gens = list(range(1, a))
    for _ in range(abs(b_param)):
        word.extend(gens if b_param > 0 else [-g for g in gens])
    return braid_pd(word, a)


def pretzel_pd(twists):
    """Pretzel diagram with the given vertical twist counts.

    Each entry is a signed number of crossings in one vertical band;
    bands are joined left to right and closed around the outside.
    """
    if not twists or all(t == 0 for t in twists):
        raise ValueError("pretzel needs at least one twist")
    b = _Builder()
    ports = []
    for t in twists:
        tl, tr = b.token(), b.token()
        bl, br = _twist_pair(b, tl, tr, t)
        ports.append((tl, tr, bl, br))
    for j in range(len(ports) - 1):
        b.union(ports[j][1], ports[j + 1][0])      # top right to next top left
        b.union(ports[j][3], ports[j + 1][2])      # bottom right to next bottom left
    b.union(ports[0][0], ports[-1][1])             # outer top arc
    b.union(ports[0][2], ports[-1][3])             # outer bottom arc
    return b.finish()


def two_bridge_pd(partial_quotients):
    """Plat closure of a 4-strand braid built from a continued fraction.

    The entries alternate between twists of the middle pair and twists
    of the left pair; with all entries positive the diagram is
    alternating with sum(entries) crossings.
    """
    pq = [int(x) for x in partial_quotients]
    if not pq:
        raise ValueError("empty continued fraction")
    b = _Builder()
    tops = [b.token() for _ in range(4)]
    cur = list(tops)
    for i, a in enumerate(pq):
        if i % 2 == 0:
            cur[1], cur[2] = _twist_pair(b, cur[1], cur[2], a)
        else:
            cur[0], cur[1] = _twist_pair(b, cur[0], cur[1], -a)
    b.union(tops[0], tops[1])
    b.union(tops[2], tops[3])
    b.union(cur[0], cur[1])
    b.union(cur[2], cur[3])
    return b.finish()


# ---------------------------------------------------------------------------
# boundary-slope database


class _InfinitySlope:
    """The slope of the meridian; never participates in arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"


INFINITY = _InfinitySlope()


def _parse_slope(tok):
    tok = tok.strip()
    if tok == "inf":
        return INFINITY
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ValueError("unparseable slope %r" % tok)


def load_slope_db(path):
    """Load a boundary-slope table: ``knot-key <TAB> slope(,slope)*``.

    Slopes are reduced fractions or ``inf``; ``#`` starts a comment.
    Duplicate keys and empty slope sets are rejected.
    """
    table = {}
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            if "\t" not in line:
                raise ValueError("%s:%d: expected a tab separator" % (path, ln))
            key, rest = line.split("\t", 1)
            key = key.strip()
            if key in table:
                raise ValueError("%s:%d: duplicate knot key %r" % (path, ln, key))
            slopes = frozenset(_parse_slope(t) for t in rest.split(","))
            if not slopes:
                raise ValueError("%s:%d: empty slope set" % (path, ln))
            table[key] = slopes
    return table


def load_knot_table(path):
    """Load a knot table: ``knot-key <TAB> pd:[(a,b,c,d),...]``."""
    table = {}
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            if "\t" not in line:
                raise ValueError("%s:%d: expected a tab separator" % (path, ln))
            key, rest = line.split("\t", 1)
            key = key.strip()
            if key in table:
                raise ValueError("%s:%d: duplicate knot key %r" % (path, ln, key))
            rest = rest.strip()
            if not rest.startswith("pd:"):
                raise ValueError("%s:%d: expected pd:[...] entry" % (path, ln))
            spec = parse_knot(rest)
            table[key] = spec.pd
    return table


_SLOPE_DB = None
_KNOT_TABLE = None


def bundled_slope_db():
    global _SLOPE_DB
    if _SLOPE_DB is None:
        _SLOPE_DB = load_slope_db(os.path.join(DATA_DIR, "boundary_slopes.tsv"))
    return _SLOPE_DB


def bundled_knot_table():
    global _KNOT_TABLE
    if _KNOT_TABLE is None:
        _KNOT_TABLE = load_knot_table(os.path.join(DATA_DIR, "knots.tsv"))
    return _KNOT_TABLE


def _negate_slopes(slopes):
    return frozenset(INFINITY if s is INFINITY else -s for s in slopes)


def boundary_slopes_for(spec, db=None):
    """Boundary-slope set for a spec, or None when no data is available.

    Torus knots use {0, ab}; the (-2,3,p) pretzels use the published
    closed form for p >= 7 and p <= -1 and explicit table rows for the
    exceptional p in {1,3,5}.  Mirrors negate every finite slope.
    """
    if db is None:
        db = bundled_slope_db()
    if isinstance(spec, Torus):
        base = frozenset({Fraction(0), Fraction(spec.a * abs(spec.b))})
        return _negate_slopes(base) if spec.b < 0 else base
    if isinstance(spec, Pretzel237):
        p = spec.p
        if p >= 7 or p <= -1:
            base = frozenset({
                Fraction(0),
                Fraction(16 if p >= 7 else 10),
                Fraction(2 * (p * p - p - 5), p - 3) if p >= 7
                else Fraction(2 * (p + 1) ** 2, p),
                Fraction(2 * (3 + p)),
            })
        else:
            row = db.get(spec.render().replace("mirror:", ""))
            if row is None:
                return None
            base = row
        return _negate_slopes(base) if spec.mirror else base
    if isinstance(spec, Named):
        row = db.get(spec.name)
        if row is None:
            return None
        return _negate_slopes(row) if spec.mirror else row
    return None
