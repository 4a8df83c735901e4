import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import L, TOY_SYNSETS
from oracles import brute_absolute_synonym_pairs, brute_absolute_translation_pairs, brute_inverse_index
from strategies import lexicons, random_lexicon, synset_lists
from wnverify.errors import (
    DuplicateSense,
    DuplicateSynsetId,
    EmptySynset,
    LanguageMismatch,
    MemberGapConflict,
    NotNearSynonyms,
    SameLanguage,
    UnknownLemma,
)
from wnverify.lexicon import GAP, MEMBER, UNCOVERED, Lemma, Lexicon, MultiSynset, Sense, build_lexicon, senses_synonymous


def test_lemma_normalization():
    assert Lemma("EN", "  Single   Out ", "v") == Lemma("en", "single out", "v")
    assert Lemma("de", "STRASSE", "n").form == "strasse"
    # NFC: decomposed e + combining acute equals precomposed é
    assert Lemma("fr", "cafe\u0301", "n") == Lemma("fr", "caf\u00e9", "n")
    with pytest.raises(ValueError):
        Lemma("en", "   ", "n")
    with pytest.raises(ValueError):
        Lemma("en", "dog", "x")


def test_synset_invariants():
    with pytest.raises(MemberGapConflict):
        MultiSynset("S", "n", {"en": ["a"], "it": ["b"]}, frozenset({"it"}))
    with pytest.raises(EmptySynset):
        MultiSynset("S", "n", {}, frozenset({"it"}))
    with pytest.raises(EmptySynset):
        MultiSynset("S", "n", {"en": []})
    with pytest.raises(DuplicateSense):
        MultiSynset("S", "n", {"en": ["Litre", "litre"]})


class TestBuild:
    def test_empty(self):
        lex = build_lexicon([])
        assert len(lex) == 0
        assert lex.lemmas() == []

    def test_duplicate_id(self):
        with pytest.raises(DuplicateSynsetId):
            build_lexicon([MultiSynset("S1", "n", {"en": ["a"]}), MultiSynset("S1", "n", {"en": ["b"]})])

    def test_index_matches_brute_force(self):
        synsets = [
            MultiSynset("A", "n", {"en": ["cat", "puss"], "it": ["gatto"]}),
            MultiSynset("B", "n", {"en": ["cat"], "it": ["felino"]}),
            MultiSynset("C", "v", {"en": ["cat"]}, frozenset({"it"})),
        ]
        lex = build_lexicon(synsets)
        assert dict(lex.index) == brute_inverse_index(synsets)
        for lemma, ids in brute_inverse_index(synsets).items():
            assert lex.synsets_of(lemma) == ids
        assert lex.check_index()

    @given(synset_lists())
    def test_index_is_inverse(self, synsets):
        lex = build_lexicon(synsets)
        assert dict(lex.index) == brute_inverse_index(synsets)


class TestWordPredicates:
    def test_synsets_of(self, toy):
        assert toy.synsets_of(L("unicorn")) == ()
        assert toy.synsets_of(L("prova", "it")) == ("n-proof", "n-test")
        assert toy.is_polysemous(L("prova", "it"))
        assert toy.synsets_of(L("involto", "it")) == ("n-bundle",)

    def test_is_monosemous(self, toy):
        assert toy.is_monosemous(L("involto", "it"))
        assert not toy.is_monosemous(L("prova", "it"))
        with pytest.raises(UnknownLemma):
            toy.is_monosemous(L("unicorn"))

    def test_senses_synonymous(self):
        gist, essence = Sense(L("gist"), "n-gist"), Sense(L("essence"), "n-gist")
        assert senses_synonymous(gist, essence)
        assert senses_synonymous(gist, gist)
        assert not senses_synonymous(Sense(L("trial"), "n-test"), Sense(L("trial"), "n-lawsuit"))

    def test_near_synonyms(self, toy):
        assert toy.near_synonyms(L("test"), L("trial"))
        assert not toy.near_synonyms(L("time"), L("weather"))
        assert toy.near_synonyms(L("test"), L("test"))
        with pytest.raises(LanguageMismatch):
            toy.near_synonyms(L("test"), L("prova", "it"))

    def test_absolute_synonyms(self, toy):
        assert toy.absolute_synonyms(L("liter"), L("litre"))
        assert toy.absolute_synonyms(L("haste"), L("hurry"))
        assert len(toy.synsets_of(L("haste"))) == 3
        # share n-test, but trial is also in n-lawsuit
        assert not toy.absolute_synonyms(L("test"), L("trial"))
        with pytest.raises(UnknownLemma):
            toy.absolute_synonyms(L("liter"), L("unicorn"))


class TestPairs:
    def test_empty(self):
        assert Lexicon().absolute_synonym_pairs("en") == []

    def test_single_pair(self):
        lex = Lexicon([MultiSynset("L", "n", {"en": ["liter", "litre"]}), MultiSynset("M", "n", {"en": ["meter"]})])
        assert lex.absolute_synonym_pairs("en") == [(L("liter"), L("litre"))]

    def test_monosemous_unique(self):
        lex = Lexicon(MultiSynset(f"S{i}", "n", {"en": [f"w{i}"]}) for i in range(10))
        assert lex.absolute_synonym_pairs("en") == []

    def test_toy_matches_brute_force(self, toy):
        assert toy.absolute_synonym_pairs("en") == brute_absolute_synonym_pairs(TOY_SYNSETS, "en")
        pairs = toy.absolute_synonym_pairs("en")
        assert (L("liter"), L("litre")) in pairs
        assert (L("haste"), L("hurry")) in pairs

    @pytest.mark.parametrize("seed", range(5))
    def test_random_lexicons_match_brute_force(self, seed):
        rng = random.Random(seed)
        lex = random_lexicon(rng, n_synsets=60, vocab=40)
        assert len(lex.lemmas()) <= 200
        assert lex.absolute_synonym_pairs("en") == brute_absolute_synonym_pairs(list(lex), "en")
        assert lex.absolute_translation_pairs("en", "it") == brute_absolute_translation_pairs(list(lex), "en", "it")

    def test_translation_pairs(self, toy):
        pairs = toy.absolute_translation_pairs("en", "it")
        assert (L("globally", pos="r"), L("globalmente", "it", "r")) in pairs
        # test/prova share n-test but prova is also in n-proof with test... both in both: identical
        assert (L("test"), L("prova", "it")) in pairs
        # trial is also in n-lawsuit, prova is not
        assert (L("trial"), L("prova", "it")) not in pairs
        assert pairs == brute_absolute_translation_pairs(TOY_SYNSETS, "en", "it")
        with pytest.raises(SameLanguage):
            toy.absolute_translation_pairs("en", "EN")

    def test_five_synset_lexicon(self):
        synsets = [
            MultiSynset("A", "n", {"en": ["a1", "a2"], "it": ["x1"]}),
            MultiSynset("B", "n", {"en": ["a1", "a2", "b"], "it": ["x1", "y"]}),
            MultiSynset("C", "n", {"en": ["c"], "it": ["z"]}),
            MultiSynset("D", "n", {"en": ["c", "d"], "it": ["z", "w"]}),
            MultiSynset("E", "v", {"en": ["e"]}, frozenset({"it"})),
        ]
        lex = Lexicon(synsets)
        assert lex.absolute_translation_pairs("en", "it") == brute_absolute_translation_pairs(synsets, "en", "it")
        assert (L("a1"), L("x1", "it")) in lex.absolute_translation_pairs("en", "it")


class TestWitness:
    def test_member_witness(self, toy):
        report = toy.shared_translation_witness(L("test"), L("trial"), "it")
        assert [(w.synset, w.status) for w in report] == [("n-test", MEMBER)]
        assert report[0].lemma == L("prova", "it")

    def test_gap_and_uncovered(self, toy):
        report = {w.synset: w for w in toy.shared_translation_witness(L("haste"), L("hurry"), "it")}
        assert report["n-haste1"].status == MEMBER
        assert report["n-haste1"].lemma == L("fretta", "it")
        assert report["n-haste2"].status == GAP
        assert report["n-haste2"].lemma is None
        assert report["n-haste3"].status == UNCOVERED

    def test_requires_near_synonyms(self, toy):
        with pytest.raises(NotNearSynonyms):
            toy.shared_translation_witness(L("time"), L("weather"), "it")


class TestRestrict:
    def test_restrict_keeps_index(self, toy):
        en = toy.restrict_to_language("en")
        assert en.lemmas("it") == []
        for lemma in toy.lemmas("en"):
            assert en.synsets_of(lemma) == toy.synsets_of(lemma)
        assert set(en.synsets) == {s.id for s in toy if "en" in s.members}

    def test_absent_language(self, toy):
        assert len(toy.restrict_to_language("ja")) == 0

    def test_idempotent(self, toy):
        once = toy.restrict_to_language("it")
        assert once.restrict_to_language("it") == once

    @given(lexicons, st.sampled_from(("en", "it", "fr")))
    def test_restriction_preserves_synsets_of(self, lex, lang):
        mono = lex.restrict_to_language(lang)
        for lemma in lex.lemmas(lang):
            assert mono.synsets_of(lemma) == lex.synsets_of(lemma)


@settings(max_examples=60)
@given(lexicons)
def test_predicate_properties(lex):
    for lemma in lex.lemmas():
        n = len(lex.synsets_of(lemma))
        assert lex.is_monosemous(lemma) != (n >= 2)
    for lang in ("en", "it", "fr"):
        lemmas = lex.lemmas(lang)
        for a in lemmas:
            for b in lemmas:
                if lex.absolute_synonyms(a, b):
                    assert lex.near_synonyms(a, b)


def test_with_member_adds_and_drops_gap(toy):
    new = toy.with_member("n-haste2", L("fretta", "it"))
    assert "it" in new.synset("n-haste2").members
    assert "it" not in new.synset("n-haste2").gaps
    assert new.synsets_of(L("fretta", "it")) == ("n-haste1", "n-haste2")
    assert toy.synset("n-haste2").gaps == {"it"}
    assert new.with_member("n-haste2", L("fretta", "it")) is new


def test_pickle_and_copy(toy):
    import copy
    import pickle

    assert pickle.loads(pickle.dumps(toy)) == toy
    assert copy.deepcopy(toy) is toy
    s = toy.synset("n-haste2")
    again = pickle.loads(pickle.dumps(s))
    assert again == s and again.gaps == s.gaps
