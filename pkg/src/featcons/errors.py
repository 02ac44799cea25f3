"""Exception hierarchy.

``DataError`` covers problems with the input table itself; ``ConfigError``
covers requests that do not fit the data (wrong feature kind, Relief on a
multi-label base, ...). The CLI maps them to exit codes 2 and 3.
"""


class FeatconsError(Exception):
    pass


class DataError(FeatconsError, ValueError):
    pass


class ConfigError(FeatconsError, ValueError):
    pass


class MissingLabelColumn(DataError):
    def __init__(self, column):
        super().__init__(f"label column {column!r} not found in header")
        self.column = column


class RaggedRow(DataError):
    def __init__(self, row, expected, got):
        super().__init__(f"row {row}: expected {expected} cells, got {got}")
        self.row = row


class MissingValue(DataError):
    def __init__(self, row, column):
        super().__init__(f"row {row}: empty cell in column {column!r}")
        self.row = row
        self.column = column


class EmptyBase(DataError):
    def __init__(self, msg="example base has no examples"):
        super().__init__(msg)


class UnparseableNumeric(DataError):
    def __init__(self, row, column, cell):
        super().__init__(f"row {row}: column {column!r} is numeric but {cell!r} is not a finite number")
        self.row = row
        self.column = column


class SingleLabel(DataError):
    def __init__(self, label):
        super().__init__(f"only one distinct label ({label!r}); at least two are required")


class SchemaError(DataError):
    pass


class EmptyInput(DataError):
    pass


class LengthMismatch(DataError):
    pass


class UnknownFeature(ConfigError, KeyError):
    def __init__(self, name):
        super().__init__(f"unknown feature {name!r}")
        self.name = name

    def __str__(self):
        return self.args[0]


class UnknownLabel(ConfigError, KeyError):
    def __init__(self, label):
        super().__init__(f"unknown label {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


class NumericFeatureUnsupported(ConfigError):
    def __init__(self, name):
        super().__init__(f"feature {name!r} is numeric; discretize it first or score it with Relief")
        self.name = name


class NotNumeric(ConfigError):
    def __init__(self, name):
        super().__init__(f"feature {name!r} is not numeric")
        self.name = name


class DuplicateScheme(ConfigError):
    def __init__(self, name):
        super().__init__(f"more than one interval scheme for feature {name!r}")
        self.name = name


class NotBinaryLabels(ConfigError):
    def __init__(self, count):
        super().__init__(f"Relief needs exactly 2 labels, base declares {count}")


class DegenerateBase(ConfigError):
    pass


class TooFewLabels(ConfigError):
    pass


class EmptyHistogram(ConfigError):
    pass


class NotASubset(ConfigError):
    pass


class ConfigIncompatible(ConfigError):
    pass


class SpecInvalid(ConfigError):
    pass
