"""Exception types shared across the pipeline."""


class StructSynthError(Exception):
    """Base class for all structsynth errors."""


class ConfigError(StructSynthError):
    """Invalid or contradictory run configuration."""


class UnknownLabel(StructSynthError):
    """A data-type value has no canonical element class in the domain."""

    def __init__(self, raw: str, domain: str):
        super().__init__(f"unknown element label {raw!r} for domain {domain}")
        self.raw = raw
        self.domain = domain


class UnknownScreenClass(StructSynthError):
    """A screentype value has no canonical screen class in the domain."""

    def __init__(self, raw: str, domain: str):
        super().__init__(f"unknown screen class {raw!r} for domain {domain}")
        self.raw = raw
        self.domain = domain


class FatalParse(StructSynthError):
    """Input markup is empty or yields no document body."""


class MissingAsset(StructSynthError):
    """A placeholder reached the rasterizer without a resolved asset."""

    def __init__(self, placeholder_id: str):
        super().__init__(f"no resolved asset for placeholder {placeholder_id}")
        self.placeholder_id = placeholder_id


class EmptyDescription(StructSynthError):
    """Alignment scoring requires a non-empty description."""


class ScorerUnavailable(StructSynthError):
    """A configured external scorer endpoint cannot be reached."""


class ProtocolViolation(StructSynthError):
    """A remote peer returned a payload outside its wire contract."""


class ClientFailure(StructSynthError):
    """The text-generation client failed after exhausting its retries."""


class MixedDomain(StructSynthError):
    """Detection export requires records from a single domain."""


class EmptyCorpus(StructSynthError):
    """Export was asked to materialize zero records."""


class MissingScreenClass(StructSynthError):
    """Classification export found a record without a screen label."""

    def __init__(self, record_id: str):
        super().__init__(f"record {record_id} has no screen class")
        self.record_id = record_id
