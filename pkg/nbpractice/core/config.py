"""
Configuration management for nbpractice
"""

import hashlib
import json
import os
import tomllib
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional, Tuple, Type

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import (
    BaseSettings,
    NoDecode,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from nbpractice.core.exceptions import ConfigError
from nbpractice.schemas.findings import FailSeverity, Severity, StripReason

CONFIG_ENV_VAR = "NBPRACTICE_CONFIG"

OPERATIONALIZED_BPS = ["BP4", "BP5", "BP6", "BP7", "BP9", "BP11", "BP12", "BP13", "BP14"]

# Module-name substrings that mark a test import
DEFAULT_TEST_SUBSTRINGS = ["test", "Test", "TEST", "mock", "Mock", "MOCK"]

# Words whose letters happen to contain "test"
RECOMMENDED_TEST_DENYLIST = [
    "latest", "greatest", "fastest", "shortest", "smartest",
    "contest", "attest", "protest", "detest",
]

# Fields that do not change what a run computes
NON_ANALYTIC_FIELDS = {
    "jobs", "include_timing", "log_level", "log_format",
    "api_host", "api_port", "fail_severity", "bridge_max_procs",
}


class TestProfile(str, Enum):
    """Test-import detection profiles"""
    __test__ = False

    STRICT = "strict"
    RECOMMENDED = "recommended"


class MatchScope(str, Enum):
    """Which part of a dotted module path test detection looks at"""
    FULL = "full"
    TOP = "top"


class MdDenominator(str, Enum):
    """Notebooks entering the markdown 5-number summaries"""
    ALL = "all"
    MD_ONLY = "md-only"


CommaList = Annotated[List[str], NoDecode]


def _split_commas(v: Any) -> Any:
    if isinstance(v, str):
        return [item.strip() for item in v.split(",") if item.strip()]
    return v


class Settings(BaseSettings):
    """Analysis settings loaded from flags, environment and a TOML file"""

    # Checks
    enabled_checks: CommaList = Field(default_factory=lambda: list(OPERATIONALIZED_BPS))
    bp4_threshold: float = Field(default=1.0, ge=0.0, le=1.0)
    max_line_len: int = Field(default=79, ge=1)
    max_cell_lines: Optional[int] = Field(default=None, ge=1)
    strict_bp5: bool = False
    allow_any_kernel: bool = False

    # Severities
    severity_map: Dict[str, Severity] = Field(
        default_factory=lambda: {"BP5": Severity.WARNING, "lint:error": Severity.WARNING}
    )
    fail_severity: FailSeverity = FailSeverity.WARNING

    # Test-import detection
    test_profile: TestProfile = TestProfile.STRICT
    test_substrings: CommaList = Field(default_factory=lambda: list(DEFAULT_TEST_SUBSTRINGS))
    test_allowlist: CommaList = Field(default_factory=lambda: ["nose2", "robot"])
    test_denylist: CommaList = Field(default_factory=list)
    test_match_scope: MatchScope = MatchScope.FULL

    # Code extraction
    strip_rules: Annotated[List[StripReason], NoDecode] = Field(
        default_factory=lambda: list(StripReason)
    )

    # External linter bridge
    bridge_command: Optional[str] = None
    ignored_checks: CommaList = Field(default_factory=lambda: ["pointless-statement"])
    bridge_max_procs: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    bridge_timeout: float = Field(default=60.0, gt=0)

    # Statistics
    md_denominator: MdDenominator = MdDenominator.ALL
    percentiles: Annotated[List[float], NoDecode] = Field(default_factory=lambda: [0.75, 0.90])

    # Execution
    jobs: int = Field(default=1, ge=1)
    include_timing: bool = False

    # Logging
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # API
    api_host: str = "127.0.0.1"
    api_port: int = 8000

    model_config = SettingsConfigDict(
        env_prefix="NBPRACTICE_",
        case_sensitive=False,
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, env_settings, TomlConfigSettingsSource(settings_cls))

    @field_validator(
        "enabled_checks", "test_substrings", "test_allowlist", "test_denylist",
        "ignored_checks", "strip_rules", "percentiles", mode="before",
    )
    @classmethod
    def assemble_lists(cls, v):
        return _split_commas(v)

    @field_validator("enabled_checks")
    @classmethod
    def validate_enabled_checks(cls, v: List[str]) -> List[str]:
        checks = [item.upper() for item in v]
        unknown = [item for item in checks if item not in OPERATIONALIZED_BPS]
        if unknown:
            raise ValueError(f"Not an operationalized best practice: {', '.join(unknown)}")
        return sorted(set(checks), key=OPERATIONALIZED_BPS.index)

    @field_validator("percentiles")
    @classmethod
    def validate_percentiles(cls, v: List[float]) -> List[float]:
        for p in v:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"Percentile {p} outside [0, 1]")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    def is_enabled(self, bp_id: str) -> bool:
        return bp_id in self.enabled_checks

    def effective_test_denylist(self) -> List[str]:
        """Denylist in force: explicit entries win, else the profile's"""
        if self.test_denylist:
            return list(self.test_denylist)
        if self.test_profile == TestProfile.RECOMMENDED:
            return list(RECOMMENDED_TEST_DENYLIST)
        return []

    def severity_for(self, check_id: str, bp_id: str, category: Optional[str] = None) -> Severity:
        """Resolve a finding's severity: check id, then lint category, then BP id"""
        for key in (check_id, f"lint:{category}" if category else None, bp_id):
            if key and key in self.severity_map:
                return self.severity_map[key]
        return Severity.INFO

    def digest(self) -> str:
        """Stable hash of every field that changes what a run computes"""
        payload = self.model_dump(mode="json", exclude=NON_ANALYTIC_FIELDS)
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_settings(config_path: Optional[Path] = None, **overrides: Any) -> Settings:
    """
    Build Settings from an optional TOML file plus explicit overrides

    Args:
        config_path: TOML file; falls back to the NBPRACTICE_CONFIG variable
        overrides: values from command-line flags; None means "not given"

    Raises:
        ConfigError: missing file, bad TOML, unknown keys or invalid values
    """
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    settings_cls: Type[Settings] = Settings
    if path:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Config file not found: {path}")
        try:
            with path.open("rb") as fh:
                tomllib.load(fh)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"Invalid TOML in {path}: {e}") from e
        settings_cls = type(
            "FileSettings", (Settings,), {"model_config": SettingsConfigDict(toml_file=path)}
        )

    given = {key: value for key, value in overrides.items() if value is not None}
    try:
        return settings_cls(**given)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
