"""
Best-practice catalog schemas
"""

from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Theme(str, Enum):
    """Catalog themes"""
    REPRODUCIBLE = "Make your analysis traceable and reproducible"
    HIGH_QUALITY_CODE = "Write high-quality code"
    LITERATE_PROGRAMMING = "Leverage the literate programming paradigm"
    CLEAN_AND_CONCISE = "Keep your notebook clean and concise"
    PRODUCTION_VS_DEVELOPMENT = "Distinguish production and development artifacts"
    OPEN_DISSEMINATION = "Embrace open dissemination"


class RegistryEntry(BaseModel):
    """One catalog best practice and its literature support"""
    bp_id: str = Field(..., pattern=r"^BP([1-9]|1[0-7])$")
    title: str
    theme: Theme
    support_count: int = Field(..., ge=1)
    source_ids: List[str] = Field(..., min_length=1)
    operationalized: bool

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_support(self):
        if self.support_count != len(self.source_ids):
            raise ValueError(f"{self.bp_id}: support_count does not match its sources")
        return self
