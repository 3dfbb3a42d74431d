from typing import Optional, Sequence


class TranslationError(Exception):
    """Base class for every error raised by the translation engine."""


class DictionaryError(TranslationError):
    """A dictionary file failed to parse or validate.

    Loaders collect every problem in a file; the first one is raised and
    the full list is available as ``errors``.
    """

    def __init__(self, message: str, source: Optional[str] = None,
                 line: Optional[int] = None, ident: Optional[str] = None):
        self.message = message
        self.source = source
        self.line = line
        self.ident = ident
        self.errors: Sequence["DictionaryError"] = (self,)
        super().__init__(self.__str__())

    def __str__(self) -> str:
        location = ""
        if self.source:
            location = self.source if self.line is None else f"{self.source}:{self.line}"
            location += ": "
        suffix = f" [{self.ident}]" if self.ident else ""
        return f"{location}{self.message}{suffix}"


class HierarchyError(DictionaryError):
    pass


class LexiconError(DictionaryError):
    pass


class PatternError(DictionaryError):
    pass


class RewriteRuleError(DictionaryError):
    pass


def raise_collected(errors: Sequence[DictionaryError]) -> None:
    """Raise the first collected error, carrying the rest along."""
    if errors:
        first = errors[0]
        first.errors = tuple(errors)
        raise first


class UnknownCategoryError(TranslationError, KeyError):

    def __init__(self, category_id: str):
        self.category_id = category_id
        super().__init__(category_id)

    def __str__(self) -> str:
        return f"unknown semantic category: {self.category_id}"


class AnalysisError(TranslationError):

    def __init__(self, message: str, position: Optional[int] = None, token: Optional[str] = None):
        self.message = message
        self.position = position
        self.token = token
        super().__init__(self.__str__())

    def __str__(self) -> str:
        where = ""
        if self.position is not None:
            where = f" at token {self.position}"
            if self.token:
                where += f" ({self.token!r})"
        return f"{self.message}{where}"


class TransferError(TranslationError):
    pass


class EncodingError(TranslationError):
    """An input file is not valid UTF-8."""

    def __init__(self, path: str, offset: int):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}: not valid UTF-8 at byte {offset}")


class CorpusError(TranslationError):

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GradeError(TranslationError):

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
