"""Session configuration shared by the CLI, the self test and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import Field


@dataclass(frozen=True)
class SessionConfig:
    field: Field = Field(0)
    tprec: int = 12
    uprec: int = 10
    seed: int = 0
    degx: int = 3
    degt: int = 3
    scap: int = 32

    def __post_init__(self):
        if self.tprec < 1:
            raise ValueError("tprec must be >= 1")
        if self.uprec < 1:
            raise ValueError("uprec must be >= 1")
        if self.degx < 0 or self.degt < 0:
            raise ValueError("degree caps must be >= 0")
        if self.scap < 0:
            raise ValueError("scap must be >= 0")

    @property
    def degbounds(self):
        return (self.degx, self.degt)

    def require_odd_char(self):
        if self.field.p == 2:
            from .errors import CharacteristicTwo

            raise CharacteristicTwo("orthogonal-group commands need char k != 2")
