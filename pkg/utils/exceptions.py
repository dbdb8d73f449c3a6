"""
Error hierarchy shared by services, views and commands
"""
from typing import Any, Dict, Optional

from utils.constants import ERROR_MESSAGES


class LabError(Exception):
    """Base error carrying a machine-readable code"""
    code = 'lab-error'

    def __init__(self, detail: str = '', context: Optional[Dict[str, Any]] = None):
        self.detail = detail
        self.context = context or {}
        message = ERROR_MESSAGES.get(self.code, 'Laboratory error')
        super().__init__(f"{message}: {detail}" if detail else message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': self.code,
            'detail': str(self),
            'context': {key: str(value) for key, value in self.context.items()},
        }


class InvalidParameter(LabError, ValueError):
    code = 'invalid-parameter'


class EnumerationTooLarge(LabError):
    code = 'enumeration-too-large'


class MassMismatch(LabError):
    code = 'mass-mismatch'


class UnsupportedConfiguration(LabError):
    code = 'unsupported-configuration'


class NoWitness(LabError):
    code = 'no-witness'


class NotADouble(LabError):
    code = 'not-a-double'


class SpectraNotDisjoint(LabError):
    code = 'spectra-not-disjoint'


class RecoveryInconclusive(LabError):
    code = 'recovery-inconclusive'


class Undecided(LabError):
    code = 'undecided'


class ParseError(LabError):
    code = 'parse-error'


class EmitError(LabError):
    code = 'emit-error'
