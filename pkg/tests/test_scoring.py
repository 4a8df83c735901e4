import pytest

from conftest import L, link
from wnverify.lexicon import Sense
from wnverify.repair import ADD, CORRECT, CorrectionSuggestion, run_repair
from wnverify.scoring import detectability_census, score_correction, score_detection
from wnverify.synthgen import MISALIGN, REANNOTATE, GenConfig, TruthEntry, synthesize
from wnverify.verify import exception_to_record, run_checks


def suggestion(kind, to, tok=3, sent="s2"):
    return CorrectionSuggestion(kind, sent, "src", tok, Sense(L("trial"), "n-lawsuit"), to)


class TestDetection:
    def test_empty(self):
        score = score_detection([], [])
        assert score.precision == score.recall == 1.0

    def test_single_match(self, toy):
        records = [
            link("s1", ("test", "n-test", 0), ("prova", "n-test", 0)),
            link("s2", ("trial", "n-lawsuit", 3), ("prova", "n-test", 3)),
        ]
        truth = [TruthEntry(REANNOTATE, "s2", "src", 3, "n-test", "n-lawsuit")]
        exceptions, _ = run_checks(records, toy, ("triples", "quads"))
        assert len(exceptions) == 1
        score = score_detection(exceptions, truth)
        assert score.precision == score.recall == 1.0
        # dict records score the same
        assert score_detection([exception_to_record(e) for e in exceptions], truth) == score

    def test_false_flag_and_miss(self, toy):
        records = [
            link("s1", ("test", "n-test", 0), ("prova", "n-test", 0)),
            link("s2", ("trial", "n-lawsuit", 3), ("prova", "n-test", 3)),
        ]
        exceptions, _ = run_checks(records, toy, ("triples",))
        truth = [TruthEntry(REANNOTATE, "s9", "src", 0, "n-test", "n-lawsuit")]
        score = score_detection(exceptions, truth)
        assert score.precision == 0.0 and score.recall == 0.0
        assert score_detection(exceptions, truth, detectable=[]).recall == 1.0


class TestCorrection:
    truth = [TruthEntry(REANNOTATE, "s2", "src", 3, "n-test", "n-lawsuit")]

    def test_correct(self):
        assert score_correction([suggestion(CORRECT, "n-test")], self.truth).accuracy == 1.0

    def test_add_on_reannotation_is_wrong(self):
        score = score_correction([suggestion(ADD, "n-test")], self.truth)
        assert score.accuracy == 0.0 and score.matched == 1

    def test_wrong_synset_and_unmatched(self):
        score = score_correction([suggestion(CORRECT, "n-proof"), suggestion(CORRECT, "n-test", tok=9)], self.truth)
        assert (score.suggestions, score.matched, score.correct) == (2, 1, 0)
        assert score_correction([], self.truth).accuracy == 1.0

    def test_add_for_misalignment_may_be_right(self):
        truth = [TruthEntry(MISALIGN, "s2", "src", 3, "n-test", "n-lawsuit")]
        assert score_correction([suggestion(ADD, "n-test")], truth).accuracy == 1.0


class TestCensus:
    def test_lonely_error_not_detectable(self, toy):
        records = [
            link("s1", ("test", "n-test", 0), ("prova", "n-test", 0)),
            link("s2", ("time", "n-time", 0), ("tempo", "n-time", 0)),
        ]
        truth = [TruthEntry(REANNOTATE, "s2", "src", 0, "n-time", "n-weather")]
        assert detectability_census(records, truth) == []
        assert detectability_census(records, truth, modes=("consistency",)) == truth

    def test_triple_partner(self, toy):
        records = [
            link("s1", ("test", "n-test", 0), ("prova", "n-test", 0)),
            link("s2", ("trial", "n-lawsuit", 3), ("prova", "n-test", 3)),
        ]
        truth = [TruthEntry(REANNOTATE, "s2", "src", 3, "n-test", "n-lawsuit")]
        assert detectability_census(records, truth) == truth
        assert detectability_census(records, truth, directions=("ts",)) == []

    @pytest.mark.parametrize("seed", range(3))
    def test_standard_config_full_recall(self, seed):
        config = GenConfig(seed=seed, n_synsets=500, n_alignments=5000, err_reannotate=0.01, err_misalign=0.005)
        lex, _, corrupted, truth = synthesize(config)
        exceptions, _ = run_checks(corrupted, lex, ("triples", "quads"))
        detectable = detectability_census(corrupted, truth)
        assert detectable
        score = score_detection(exceptions, truth, detectable)
        assert score.recall == 1.0
        assert score.precision == 1.0

    def test_isolated_accuracy(self):
        config = GenConfig(seed=1, n_synsets=500, n_alignments=5000, err_reannotate=0.02, isolated=True)
        lex, _, corrupted, truth = synthesize(config)
        suggestions, _ = run_repair(corrupted, lex, "st")
        score = score_correction(suggestions, truth)
        assert score.matched == score.suggestions > 0
        assert score.accuracy == 1.0
