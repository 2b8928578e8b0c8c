# genperm/backend/validate/report.py
from pydantic import BaseModel, Field

from genperm.backend.graph.cover import Cover
from genperm.backend.validate.fscore import fscore
from genperm.backend.validate.omega import OmegaVariant, omega_index
from genperm.backend.validate.onmi import ONMI_VARIANT, onmi

VALIDATION_METRICS = ("onmi", "omega", "fscore")


class ValidationReport(BaseModel):
    onmi: float = Field(ge=0.0, le=1.0)
    omega: float = Field(le=1.0)
    fscore: float = Field(ge=0.0, le=1.0)
    onmi_variant: str = ONMI_VARIANT
    omega_variant: str = "ordered"

    @property
    def composite(self) -> float:
        """Sum of the three validation scores."""
        return self.onmi + self.omega + self.fscore


def validate_covers(truth: Cover, detected: Cover, omega_variant: OmegaVariant = "ordered") -> ValidationReport:
    return ValidationReport(
        onmi=onmi(truth, detected),
        omega=omega_index(truth, detected, variant=omega_variant),
        fscore=fscore(truth, detected),
        omega_variant=omega_variant,
    )


def composite_performance(truth: Cover, detected: Cover) -> float:
    return validate_covers(truth, detected).composite
