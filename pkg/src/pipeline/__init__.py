"""Analysis pipeline: run state machine and the service behind the CLI."""

from .state_machine import EXIT_CODES, StateMachine, State
from .service import AnalysisService

__all__ = ["EXIT_CODES", "StateMachine", "State", "AnalysisService"]
