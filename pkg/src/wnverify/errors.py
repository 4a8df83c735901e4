"""Exception hierarchy shared by every wnverify module."""


class WnVerifyError(Exception):
    """Base class for all errors raised by wnverify."""


# lexicon construction and queries

class LexiconError(WnVerifyError):
    """A lexicon-level invariant was violated.

    ``prop`` names the structural property at stake, so validators can
    report which rule a record breaks.
    """

    prop = "lexicon invariant"

    def __init__(self, message, synset_id=None):
        super().__init__(message)
        self.synset_id = synset_id


class DuplicateSynsetId(LexiconError):
    prop = "unique synset identifiers"


class MemberGapConflict(LexiconError):
    prop = "members and gaps are disjoint"


class EmptySynset(LexiconError):
    prop = "every concept is lexicalized in at least one language"


class DuplicateSense(LexiconError):
    prop = "property #4: every word sense belongs to exactly one synset"


class UnknownLemma(WnVerifyError):
    pass


class LanguageMismatch(WnVerifyError):
    pass


class SameLanguage(WnVerifyError):
    pass


class NotNearSynonyms(WnVerifyError):
    pass


# ingestion

class ParseError(WnVerifyError):
    """Base for positioned parse failures."""

    def __init__(self, message, line=None, field=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.field = field


class RecordSyntaxError(ParseError):
    """The line is not a well-formed JSON object."""


class SchemaError(ParseError):
    """The line is valid JSON but violates the record schema."""


class UnresolvedKey(WnVerifyError):
    pass


# verification and repair

class UnresolvedSynset(WnVerifyError):
    pass


class MissingSentence(WnVerifyError):
    pass


class PremiseViolation(WnVerifyError):
    pass


class ConflictUnresolved(WnVerifyError):
    """Raised when conflicting suggestions were left unapplied.

    The partially repaired resources are attached so callers can still
    write them out.
    """

    def __init__(self, message, alignments=None, lexicon=None, report=None):
        super().__init__(message)
        self.alignments = alignments
        self.lexicon = lexicon
        self.report = report


# generation

class InvalidConfig(WnVerifyError):
    pass


class InsufficientLexicalization(WnVerifyError):
    pass
