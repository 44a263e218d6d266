"""Exception hierarchy.

``InputError`` covers malformed or inconsistent input (CLI exit code 1);
``DegenerateDataError`` covers well-formed input that leaves nothing to
measure, such as an empty cube (CLI exit code 2).
"""


class CommentropyError(Exception):
    pass


class InputError(CommentropyError, ValueError):
    pass


class DegenerateDataError(CommentropyError, ValueError):
    pass


class CorpusFormatError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DuplicateIdError(InputError):
    def __init__(self, doc_id, lineno=None):
        self.doc_id = doc_id
        self.lineno = lineno
        where = f" (line {lineno})" if lineno is not None else ""
        super().__init__(f"duplicate document id {doc_id!r}{where}")


class UnmatchedCountryError(InputError):
    def __init__(self, code, scheme):
        self.code = code
        super().__init__(f"country {code!r} is not covered by grouping scheme {scheme!r}")
