"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class FootnetError(Exception):
    exit_code = 3


class DataError(FootnetError):
    """Bad input data or configuration."""


class MissingFile(DataError):
    def __init__(self, name):
        super().__init__(f"missing input file: {name}")
        self.name = name


class ParseError(DataError):
    def __init__(self, file, line, reason):
        super().__init__(f"{file}:{line}: {reason}")
        self.file, self.line, self.reason = file, line, reason


class ReferentialError(DataError):
    def __init__(self, file, line, missing_key):
        super().__init__(f"{file}:{line}: unknown key {missing_key!r}")
        self.file, self.line, self.missing_key = file, line, missing_key


class DuplicateKey(DataError):
    def __init__(self, file, line, key=None):
        super().__init__(f"{file}:{line}: duplicate key {key!r}")
        self.file, self.line, self.key = file, line, key


class RangeError(DataError):
    def __init__(self, key, value=None):
        super().__init__(f"config value out of range: {key}={value!r}")
        self.key, self.value = key, value


class SeasonInFuture(DataError):
    def __init__(self, season, reference_season=None):
        super().__init__(f"season {season} is after reference season {reference_season}")
        self.season = season


class DegenerateImportance(DataError):
    def __init__(self, club_id, arc=None):
        msg = f"club {club_id!r} has no usable importance inputs"
        if arc is not None:
            msg += f" (arc {arc[0]} -> {arc[1]})"
        super().__init__(msg)
        self.club_id, self.arc = club_id, arc


class ZeroWeightArc(DataError):
    def __init__(self, a, b):
        super().__init__(f"arc {a} -> {b} has non-positive weight")
        self.a, self.b = a, b


class EmptyGraph(DataError):
    def __init__(self):
        super().__init__("graph has no nodes")


class TooLarge(DataError):
    def __init__(self, n, cap):
        super().__init__(f"graph with {n} nodes exceeds oracle cap {cap}")
        self.n, self.cap = n, cap


class UnknownPlayer(DataError):
    def __init__(self, node_id):
        super().__init__(f"no player record for {node_id!r}")
        self.node_id = node_id


class UnknownName(DataError):
    def __init__(self, node_id):
        super().__init__(f"no display name for {node_id!r}")
        self.node_id = node_id


class IoError(DataError):
    def __init__(self, path, reason=""):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path


class NotConverged(FootnetError):
    exit_code = 4

    def __init__(self, iterations, residual):
        super().__init__(f"PageRank did not converge after {iterations} iterations (residual {residual:.3e})")
        self.iterations, self.residual = iterations, residual


class ValidationFailed(FootnetError):
    exit_code = 1

    def __init__(self, n_findings):
        super().__init__(f"{n_findings} validation finding(s)")
        self.n_findings = n_findings
