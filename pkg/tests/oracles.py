"""Brute-force reference implementations used as independent test oracles.

Nothing here goes through the Lexicon index or the hash-join enumerators:
membership is recomputed by scanning synsets and premises by pairwise
comparison of alignment records.
"""
import itertools

from wnverify.lexicon import Lemma, Sense


def scan_synsets_of(synsets, lemma):
    return sorted(
        s.id
        for s in synsets
        if s.pos == lemma.pos and lemma.form in s.members.get(lemma.lang, ())
    )


def all_lemmas(synsets, lang=None):
    out = set()
    for s in synsets:
        for l, forms in s.members.items():
            if lang is None or l == lang:
                out.update(Lemma(l, f, s.pos) for f in forms)
    return sorted(out)


def brute_inverse_index(synsets):
    return {lemma: tuple(scan_synsets_of(synsets, lemma)) for lemma in all_lemmas(synsets)}


def brute_absolute_synonym_pairs(synsets, lang):
    lemmas = all_lemmas(synsets, lang)
    out = []
    for a, b in itertools.combinations(lemmas, 2):
        if scan_synsets_of(synsets, a) == scan_synsets_of(synsets, b):
            out.append((a, b))
    return sorted(out)


def brute_absolute_translation_pairs(synsets, lang_e, lang_f):
    out = []
    for a in all_lemmas(synsets, lang_e):
        for b in all_lemmas(synsets, lang_f):
            if scan_synsets_of(synsets, a) == scan_synsets_of(synsets, b):
                out.append((a, b))
    return sorted(out)


def _oriented(record, direction):
    src, tgt = (record.src, record.tgt) if direction == "st" else (record.tgt, record.src)
    return Sense(src.lemma, src.synsets[0]), Sense(tgt.lemma, tgt.synsets[0])


def brute_triples(records, direction="st"):
    """Set of (frozenset{src_a, src_b}, tgt) over all record pairs."""
    oriented = [_oriented(r, direction) for r in records]
    out = set()
    for (s1, t1), (s2, t2) in itertools.combinations(oriented, 2):
        if t1 == t2 and s1 != s2:
            out.add((frozenset((s1, s2)), t1))
    return out


def brute_quads(records, direction="st"):
    """Set of frozenset{(s1, t1), (s2, t2)} with distinct synonymous targets."""
    oriented = [_oriented(r, direction) for r in records]
    out = set()
    for (s1, t1), (s2, t2) in itertools.combinations(oriented, 2):
        if t1 != t2 and t1.synset == t2.synset and s1 != s2:
            out.add(frozenset(((s1, t1), (s2, t2))))
    return out


def brute_word_triples(records, synsets, direction="st"):
    """Map (frozenset{e_x, e_y}, f) -> category, judged by scanning synsets."""
    oriented = [_oriented(r, direction) for r in records]
    scanned = {}

    def synsets_of(lemma):
        if lemma not in scanned:
            scanned[lemma] = set(scan_synsets_of(synsets, lemma))
        return scanned[lemma]

    out = {}
    for (s1, t1), (s2, t2) in itertools.combinations(oriented, 2):
        e_x, e_y, f = s1.lemma, s2.lemma, t1.lemma
        if f != t2.lemma or e_x == e_y:
            continue
        poly = len(synsets_of(f)) >= 2
        near = bool(synsets_of(e_x) & synsets_of(e_y))
        cat = {(True, True): "both", (True, False): "polysemy_only",
               (False, True): "synonymy_only", (False, False): "neither"}[(poly, near)]
        out[(frozenset((e_x, e_y)), f)] = cat
    return out
