"""Finite presentations of the weighted fundamental group.

One generator per edge (a, b) with a < b.  Relators are freely reduced
words stored as syllables (generator index, nonzero exponent):

* each tree edge ab contributes the relator g_ab^w(ab);
* each triangle a < v < b contributes g_ab^-w(ab) g_av^w(av) g_vb^w(vb),
  the triangle relation moved to one side;
* relators whose exponents are all zero reduce to the empty word and are
  dropped (the generator survives as a free factor).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .complexes import WeightedComplex
from .errors import MissingTree
from .exact import AbelianGroup, IntegerMatrix, abelian_group_from_matrix

Syllable = tuple[int, int]
Word = tuple[Syllable, ...]


def free_reduce(syllables: Iterable[Syllable]) -> Word:
    """Merge adjacent syllables on the same generator and drop zero exponents."""
    out: list[Syllable] = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((g, merged))
        else:
            out.append((g, e))
    return tuple(out)


def generator_label(a: int, b: int) -> str:
    if a < 10 and b < 10:
        return f"g{a}{b}"
    return f"g{a}_{b}"


def word_text(word: Word, generators: tuple[str, ...]) -> str:
    if not word:
        return "1"
    parts = []
    for g, e in word:
        parts.append(generators[g] if e == 1 else f"{generators[g]}^{e}")
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        n = len(self.generators)
        for word in self.relators:
            for g, e in word:
                if not 0 <= g < n:
                    raise ValueError(f"syllable references generator {g} of {n}")
                if e == 0:
                    raise ValueError("zero exponent in a relator word")
            for (g1, _), (g2, _) in zip(word, word[1:]):
                if g1 == g2:
                    raise ValueError("relator is not freely reduced")

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(word_text(w, self.generators) for w in self.relators)
        return f"⟨ {gens} | {rels} ⟩"


def present(complex: WeightedComplex) -> Presentation:
    """The defining presentation read off the tree and the triangles."""
    if complex.tree is None:
        raise MissingTree("presentation needs a maximal tree")
    keys = complex.edge_keys
    index = {key: i for i, key in enumerate(keys)}
    labels = tuple(generator_label(a, b) for a, b in keys)
    weight = complex.weight_of
    tree = set(complex.tree)

    relators: list[Word] = []
    for key in keys:
        if key in tree:
            word = free_reduce([(index[key], weight[key])])
            if word:
                relators.append(word)
    for a, v, b in complex.triangles:
        word = free_reduce(
            [
                (index[(a, b)], -weight[(a, b)]),
                (index[(a, v)], weight[(a, v)]),
                (index[(v, b)], weight[(v, b)]),
            ]
        )
        if word:
            relators.append(word)
    return Presentation(labels, tuple(relators))


def simplify(p: Presentation) -> Presentation:
    """Safe Tietze moves only: drop empty relators, eliminate generators
    killed by a length-1 exponent-±1 relator, and freely reduce.  The
    result presents the same group."""
    generators = list(p.generators)
    relators = [list(w) for w in p.relators]

    changed = True
    while changed:
        changed = False
        reduced = [list(free_reduce(w)) for w in relators]
        reduced = [w for w in reduced if w]
        if len(reduced) != len(relators):
            changed = True
        relators = reduced

        doomed = None
        for w in relators:
            if len(w) == 1 and abs(w[0][1]) == 1:
                doomed = w[0][0]
                break
        if doomed is not None:
            generators.pop(doomed)
            relators = [
                [(g - (g > doomed), e) for g, e in w if g != doomed] for w in relators
            ]
            changed = True

    return Presentation(tuple(generators), tuple(tuple(w) for w in relators))


def abelianized_relation_matrix(p: Presentation) -> IntegerMatrix:
    """One row per relator, one column per generator, entries the signed
    exponent sums."""
    cols = len(p.generators)
    entries = []
    for word in p.relators:
        row = [0] * cols
        for g, e in word:
            row[g] += e
        entries.extend(row)
    return IntegerMatrix(len(p.relators), cols, tuple(entries))


def abelianized_group(p: Presentation) -> AbelianGroup:
    """Abelianization of the presented group, by Smith normal form."""
    return abelian_group_from_matrix(abelianized_relation_matrix(p), len(p.generators))


def presentation_to_json(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [[[g, e] for g, e in word] for word in p.relators],
    }
