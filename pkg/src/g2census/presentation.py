"""Finitely presented groups with marked linking words and affine data.

Words are tuples of ``(generator index, exponent)`` pairs with exponent
+1 or -1.  Commutators follow ``[g, h] = g h g^-1 h^-1`` and a relation
``u = v`` is stored as the relator ``u v^-1``.  Affine maps compose as
functions: the word ``g h`` acts by ``x -> g(h(x))``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _exact
from .smith import diagonal, smith_normal_form

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]
Affine = Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[Fraction, ...]]


class PresentationError(ValueError):
    """Malformed presentation text or data."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def free_reduce(word: Sequence[Letter]) -> Word:
    out: List[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    return tuple(u) + tuple(v) + invert(u) + invert(v)


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + sum Z/d_i with d_1 | d_2 | ..., all d_i >= 2."""

    factors: Tuple[int, ...]
    free_rank: int

    def __str__(self):
        parts = [f"Z/{d}" for d in self.factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]
    signs: Optional[Tuple[int, ...]] = None
    linking: Tuple[Tuple[str, Word], ...] = ()
    affine: Optional[Dict[str, Affine]] = field(default=None, hash=False)
    name: str = ""

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError("duplicate generator name")
        object.__setattr__(self, "relators", tuple(tuple((int(g), int(e)) for g, e in r) for r in self.relators))
        for r in self.relators + tuple(w for _, w in self.linking):
            for g, e in r:
                if not 0 <= g < n or e not in (1, -1):
                    raise PresentationError(f"bad letter {(g, e)}")
        if self.signs is not None:
            object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
            if len(self.signs) != len(self.relators) or any(s not in (1, -1) for s in self.signs):
                raise PresentationError("relator signs must be +-1, one per relator")
        if self.affine is not None:
            missing = [g for g in self.generators if g not in self.affine]
            if missing:
                raise PresentationError(f"affine data missing for {missing}")
            for g, (lin, tr) in self.affine.items():
                if _exact.matmul(lin, _exact.transpose(lin)) != _exact.identity(len(lin)):
                    raise PresentationError(f"linear part of {g} is not orthogonal")
                if len(tr) != len(lin):
                    raise PresentationError(f"translation of {g} has wrong length")

    # ------------------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def is_projective(self) -> bool:
        return self.signs is not None and any(s == -1 for s in self.signs)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def word_str(self, word: Sequence[Letter]) -> str:
        return format_word(word, self.generators)

    def relator_sign(self, i: int) -> int:
        return 1 if self.signs is None else self.signs[i]

    def linear_parts(self) -> List[List[List[Fraction]]]:
        if self.affine is None:
            raise PresentationError("presentation has no affine realization")
        return [[list(r) for r in self.affine[g][0]] for g in self.generators]

    def evaluate_affine(self, word: Sequence[Letter]):
        """(linear, translation) of the affine map of a word."""
        if self.affine is None:
            raise PresentationError("presentation has no affine realization")
        dim = len(next(iter(self.affine.values()))[1])
        lin = _exact.identity(dim)
        tr = [Fraction(0)] * dim
        for g, e in word:
            a, t = self.affine[self.generators[g]]
            a = [list(r) for r in a]
            t = list(t)
            if e == -1:
                a = _exact.transpose(a)
                t = [-x for x in _exact.matvec(a, t)]
            # current map x -> lin x + tr, then compose with (a, t) on the right
            tr = [x + y for x, y in zip(tr, _exact.matvec(lin, t))]
            lin = _exact.matmul(lin, a)
        return lin, tr

    def affine_defects(self) -> List[int]:
        """Indices of relators that do not evaluate to the identity map."""
        if self.affine is None:
            return []
        dim = len(next(iter(self.affine.values()))[1])
        eye = _exact.identity(dim)
        bad = []
        for i, r in enumerate(self.relators):
            lin, tr = self.evaluate_affine(r)
            if lin != eye or any(tr):
                bad.append(i)
        return bad

    def exponent_matrix(self) -> List[List[int]]:
        rows = []
        for r in self.relators:
            row = [0] * self.ngens
            for g, e in r:
                row[g] += e
            rows.append(row)
        return rows

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        for i, r in enumerate(self.relators):
            s = self.relator_sign(i)
            tag = "relator[-1]" if (self.signs is not None and s == -1) else "relator"
            lines.append(f"{tag}: {self.word_str(r)}")
        if self.linking:
            lines.append("linking: " + " | ".join(self.word_str(w) for _, w in self.linking))
        if self.affine is not None:
            for g in self.generators:
                lin, tr = self.affine[g]
                lines.append(f"affine {g}: linear={_format_linear(lin)} translation=({','.join(str(x) for x in tr)})")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\S+")


def _resolve(token: str, generators: Sequence[str]) -> Letter:
    if token in generators:
        return generators.index(token), 1
    if token.endswith("'") and token[:-1] in generators:
        return generators.index(token[:-1]), -1
    low = token[:1].lower() + token[1:]
    if token[:1].isupper() and low in generators:
        return generators.index(low), -1
    raise KeyError(token)


def parse_word(text: str, generators: Sequence[str], line: Optional[int] = None, offset: int = 0) -> Word:
    word = []
    for m in _TOKEN.finditer(text):
        try:
            word.append(_resolve(m.group(), generators))
        except KeyError:
            raise PresentationError(f"unknown generator {m.group()!r}", line, offset + m.start() + 1) from None
    return tuple(word)


def format_word(word: Sequence[Letter], generators: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(generators[g] if e == 1 else generators[g] + "'" for g, e in word)


def _parse_rational(tok: str) -> Fraction:
    return Fraction(tok.strip())


def _parse_linear(text: str, dim: int) -> Tuple[Tuple[Fraction, ...], ...]:
    text = text.strip()
    if text == "I":
        return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
    m = re.fullmatch(r"diag\((.*)\)", text)
    if m:
        entries = [_parse_rational(t) for t in m.group(1).split(",")]
        if len(entries) != dim:
            raise ValueError("diag has wrong length")
        return tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(dim)) for i in range(dim))
    m = re.fullmatch(r"matrix\((.*)\)", text)
    if m:
        rows = [tuple(_parse_rational(t) for t in r.split(",")) for r in m.group(1).split(";")]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ValueError("matrix has wrong shape")
        return tuple(rows)
    raise ValueError(f"cannot read linear part {text!r}")


def _format_linear(lin) -> str:
    n = len(lin)
    if all(lin[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        if all(lin[i][i] == 1 for i in range(n)):
            return "I"
        return "diag(" + ",".join(str(lin[i][i]) for i in range(n)) + ")"
    return "matrix(" + ";".join(",".join(str(x) for x in row) for row in lin) + ")"


_AFFINE = re.compile(r"linear=(?P<lin>\S+)\s+translation=\((?P<tr>[^)]*)\)\s*$")


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Read the line-oriented presentation format.

    ::

        generators: x y
        relator: x y X Y
        relator[-1]: x y x' y'
        linking: x | y x
        affine x: linear=I translation=(1,0,0)
    """
    generators: Optional[Tuple[str, ...]] = None
    relators: List[Word] = []
    signs: List[int] = []
    linking: Optional[List[Tuple[str, Word]]] = None
    affine: Dict[str, Affine] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise PresentationError("expected 'key: value'", lineno, 1)
        key, body = line.split(":", 1)
        offset = len(key) + 1
        key = key.strip()
        if key == "generators":
            if generators is not None:
                raise PresentationError("duplicate generators section", lineno, 1)
            generators = tuple(body.split())
            if len(set(generators)) != len(generators):
                raise PresentationError("duplicate generator name", lineno, offset + 1)
            for g in generators:
                if g.endswith("'"):
                    raise PresentationError(f"generator name {g!r} may not end in an apostrophe", lineno, 1)
            continue
        if generators is None:
            raise PresentationError("generators must be declared first", lineno, 1)
        m = re.fullmatch(r"relator(?:\[(?P<sign>[+-]?1)\])?", key)
        if m:
            relators.append(parse_word(body, generators, lineno, offset))
            signs.append(int(m.group("sign") or 1))
            continue
        if key == "linking":
            if linking is not None:
                raise PresentationError("duplicate linking section", lineno, 1)
            linking = []
            pos = offset
            for chunk in body.split("|"):
                w = parse_word(chunk, generators, lineno, pos)
                if not w:
                    raise PresentationError("empty linking word", lineno, pos + 1)
                linking.append((format_word(w, generators), w))
                pos += len(chunk) + 1
            continue
        m = re.fullmatch(r"affine\s+(?P<gen>\S+)", key)
        if m:
            gen = m.group("gen")
            if gen not in generators:
                raise PresentationError(f"unknown generator {gen!r}", lineno, key.index(gen) + 1)
            if gen in affine:
                raise PresentationError(f"duplicate affine section for {gen}", lineno, 1)
            am = _AFFINE.search(body)
            if not am:
                raise PresentationError("malformed affine line", lineno, offset + 1)
            try:
                tr = tuple(_parse_rational(t) for t in am.group("tr").split(","))
                lin = _parse_linear(am.group("lin"), len(tr))
            except (ValueError, ZeroDivisionError) as exc:
                raise PresentationError(str(exc), lineno, offset + 1) from None
            affine[gen] = (lin, tr)
            continue
        raise PresentationError(f"unknown section {key!r}", lineno, 1)
    if generators is None:
        raise PresentationError("no generators declared")
    return Presentation(
        generators=generators,
        relators=tuple(relators),
        signs=tuple(signs) if any(s == -1 for s in signs) else None,
        linking=tuple(linking or ()),
        affine=affine or None,
        name=name,
    )


# ---------------------------------------------------------------------------
# abelianization


def abelianization(p: Presentation) -> AbelianInvariants:
    rows = p.exponent_matrix()
    if not rows:
        return AbelianInvariants((), p.ngens)
    _, d, _ = smith_normal_form(rows)
    diag = [x for x in diagonal(d) if x != 0]
    return AbelianInvariants(tuple(x for x in diag if x > 1), p.ngens - len(diag))


def hom_count_mod2(p: Presentation) -> int:
    """|Hom(G, Z/2)|."""
    inv = abelianization(p)
    return 2 ** (inv.free_rank + sum(1 for d in inv.factors if d % 2 == 0))


# ---------------------------------------------------------------------------
# built-in presentations


def _diag(*entries) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(entries)
    return tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


_HALF = Fraction(1, 2)

# Fixed translations of each involution: i with g tau_i g = tau_i.
_JOYCE_FIXED = {"a": (1, 2, 3), "b": (1, 4, 5), "c": (2, 4, 6)}


def joyce_example3(affine_consistent: bool = False) -> Presentation:
    """The orbifold group of T^7 / (Z/2)^3 from Joyce's third example.

    Generators t1..t7 (unit translations) and the involutions a, b, c
    (alpha, beta, gamma).  Relator order: 21 translation commutators, the
    three squares, the three twisted commutators, then the seven conjugation
    relations of each involution.

    With ``affine_consistent`` the relation [a, c] = t5^-1 t7^-1 satisfied by
    the affine maps replaces the printed [a, c] = t7^-1.
    """
    gens = tuple(f"t{i}" for i in range(1, 8)) + ("a", "b", "c")
    g = {name: (i, 1) for i, name in enumerate(gens)}
    inv = {name: (i, -1) for i, name in enumerate(gens)}
    rel: List[Word] = []
    for i in range(1, 8):
        for j in range(i + 1, 8):
            rel.append(commutator((g[f"t{i}"],), (g[f"t{j}"],)))
    for x in "abc":
        rel.append((g[x], g[x]))
    rel.append(commutator((g["a"],), (g["b"],)) + (g["t6"],))
    if affine_consistent:
        rel.append(commutator((g["a"],), (g["c"],)) + (g["t7"], g["t5"]))
    else:
        rel.append(commutator((g["a"],), (g["c"],)) + (g["t7"],))
    rel.append(commutator((g["b"],), (g["c"],)) + (g["t7"],))
    for x, fixed in _JOYCE_FIXED.items():
        for i in range(1, 8):
            t = f"t{i}"
            rel.append((g[x], g[t], g[x], inv[t] if i in fixed else g[t]))
    linking_text = ["a", "t4 a", "t5 a", "t7 a", "b", "t2 b", "t3 b", "t2 t3 b", "c", "t1 c", "t3 c", "t1 t3 c"]
    linking = tuple((w, parse_word(w, gens)) for w in linking_text)
    zero = (Fraction(0),) * 7
    affine: Dict[str, Affine] = {}
    for i in range(1, 8):
        affine[f"t{i}"] = (_diag(*[1] * 7), tuple(Fraction(int(k == i - 1)) for k in range(7)))
    affine["a"] = (_diag(1, 1, 1, -1, -1, -1, -1), zero)
    affine["b"] = (_diag(1, -1, -1, 1, 1, -1, -1), (0, 0, 0, 0, 0, _HALF, 0))
    affine["c"] = (_diag(-1, 1, -1, 1, -1, 1, -1), (0, 0, 0, 0, _HALF, 0, _HALF))
    affine = {k: (lin, tuple(Fraction(x) for x in tr)) for k, (lin, tr) in affine.items()}
    return Presentation(gens, tuple(rel), None, linking, affine,
                        name="joyce-ex3-affine" if affine_consistent else "joyce-ex3")


def t3_projective(signs: Tuple[int, int, int] = (-1, 1, 1)) -> Presentation:
    """pi_1(T^3) with [a, b] carrying the projective sign -1."""
    gens = ("a", "b", "c")
    a, b, c = ((0, 1),), ((1, 1),), ((2, 1),)
    rel = (commutator(a, b), commutator(a, c), commutator(b, c))
    return Presentation(gens, rel, tuple(signs), (), None, name="t3-k3")


BUILTINS = {
    "joyce-ex3": joyce_example3,
    "joyce-ex3-affine": lambda: joyce_example3(affine_consistent=True),
    "t3-k3": t3_projective,
}


def builtin(name: str) -> Presentation:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise PresentationError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
