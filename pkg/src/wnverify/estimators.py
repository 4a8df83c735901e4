"""scikit-learn style wrappers around detection and repair.

``X`` is always a sequence of :class:`~wnverify.ingest.AlignmentRecord`;
the lexicon is a constructor parameter so that ``get_params``/``clone``
and pipelines work as usual.

>>> detector = ExceptionDetector(lexicon=lex, mode="all").fit(records)
>>> suspect = detector.predict(records)          # 0/1 per record
>>> repairer = SenseRepairer(lexicon=lex, min_support=2).fit(records)
>>> fixed = repairer.transform(records)
"""
from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import ConflictUnresolved
from .ingest import filter_alignments
from .repair import RepairPolicy, apply_corrections, run_repair
from .validation import check_alignments, check_directions, check_lexicon, check_modes
from .verify import exception_to_record, exception_tokens, run_checks


class ExceptionDetector(BaseEstimator):
    """Flag alignment records that take part in a theorem exception."""

    def __init__(self, lexicon=None, mode="all", direction="both"):
        self.lexicon = lexicon
        self.mode = mode
        self.direction = direction

    def _detect(self, X):
        records = check_alignments(X)
        kept, filter_report = filter_alignments(records)
        check_alignments(kept, self.lexicon_, resolved=True)
        exceptions, report = run_checks(kept, self.lexicon_, self.modes_, self.directions_)
        return records, exceptions, report, filter_report

    def fit(self, X, y=None):
        self.lexicon_ = check_lexicon(self.lexicon)
        self.modes_ = check_modes(self.mode)
        self.directions_ = check_directions(self.direction)
        _, self.exceptions_, self.report_, self.filter_report_ = self._detect(X)
        return self

    def predict(self, X):
        """1 for every record whose tokens appear in some exception, else 0."""
        check_is_fitted(self, "lexicon_")
        records, exceptions, _, _ = self._detect(X)
        flagged = set()
        for exc in exceptions:
            flagged |= exception_tokens(exception_to_record(exc))
        return np.array(
            [
                int((r.sent, "src", r.src.tok) in flagged or (r.sent, "tgt", r.tgt.tok) in flagged)
                for r in records
            ],
            dtype=int,
        )

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)


class SenseRepairer(TransformerMixin, BaseEstimator):
    """Suggest corrections on ``fit``, apply them on ``transform``.

    The amended lexicon produced by the last ``transform`` is stored in
    ``lexicon_``.  Conflicts left unresolved under the ``skip`` policy
    produce a warning rather than an error.
    """

    def __init__(self, lexicon=None, direction="st", min_support=1, allow_add=True, conflict="skip"):
        self.lexicon = lexicon
        self.direction = direction
        self.min_support = min_support
        self.allow_add = allow_add
        self.conflict = conflict

    def fit(self, X, y=None):
        lex = check_lexicon(self.lexicon)
        directions = check_directions(self.direction)
        records = check_alignments(X)
        kept, _ = filter_alignments(records)
        check_alignments(kept, lex, resolved=True)
        self.policy_ = RepairPolicy(self.min_support, self.allow_add, self.conflict)
        self.suggestions_, self.report_ = run_repair(kept, lex, directions)
        self.lexicon_ = lex
        return self

    def transform(self, X):
        check_is_fitted(self, "suggestions_")
        records = check_alignments(X)
        try:
            out, lex, report = apply_corrections(records, check_lexicon(self.lexicon), self.suggestions_, self.policy_)
        except ConflictUnresolved as exc:
            warnings.warn(str(exc), stacklevel=2)
            out, lex, report = exc.alignments, exc.lexicon, exc.report
        self.lexicon_ = lex
        self.transform_report_ = report
        return out
