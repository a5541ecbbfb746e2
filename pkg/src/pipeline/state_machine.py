"""State machine for one analysis run."""

import logging
from enum import Enum, auto
from typing import Callable, Optional

logger = logging.getLogger(__name__)


class State(Enum):
    """Pipeline states."""
    START = auto()
    PARSED = auto()
    VALIDATED = auto()
    SEPARATED = auto()
    ORDERED = auto()
    MEASURED = auto()
    DONE = auto()
    PARSE_FAILED = auto()
    INVALID = auto()
    NOT_SEPARATED = auto()
    NOT_APPLICABLE = auto()


EXIT_CODES = {
    State.DONE: 0,
    State.INVALID: 2,
    State.PARSE_FAILED: 3,
    State.NOT_SEPARATED: 4,
    State.NOT_APPLICABLE: 5,
}

TERMINAL = frozenset(EXIT_CODES)


class StateMachine:
    """
    Progress of a run through parsing, validation and analysis.

    Valid transitions:
    - START -> PARSED | PARSE_FAILED
    - PARSED -> VALIDATED | INVALID
    - VALIDATED -> SEPARATED | NOT_APPLICABLE | DONE (validate, render)
    - SEPARATED -> ORDERED | NOT_SEPARATED | NOT_APPLICABLE | DONE
    - ORDERED -> MEASURED | NOT_APPLICABLE | NOT_SEPARATED | DONE
    - MEASURED -> DONE | NOT_APPLICABLE
    """

    VALID_TRANSITIONS = {
        State.START: {State.PARSED, State.PARSE_FAILED},
        State.PARSED: {State.VALIDATED, State.INVALID},
        State.VALIDATED: {State.SEPARATED, State.NOT_APPLICABLE, State.DONE},
        State.SEPARATED: {State.ORDERED, State.NOT_SEPARATED, State.NOT_APPLICABLE, State.DONE},
        State.ORDERED: {State.MEASURED, State.NOT_APPLICABLE, State.NOT_SEPARATED, State.DONE},
        State.MEASURED: {State.DONE, State.NOT_APPLICABLE},
    }

    def __init__(self, on_state_change: Optional[Callable[[State, State], None]] = None):
        """
        Args:
            on_state_change: Optional callback(old_state, new_state) on transitions
        """
        self._state = State.START
        self._on_state_change = on_state_change
        self._error_message: Optional[str] = None

    @property
    def state(self) -> State:
        return self._state

    @property
    def is_terminal(self) -> bool:
        return self._state in TERMINAL

    @property
    def exit_code(self) -> int:
        """Exit code of a terminal state."""
        if not self.is_terminal:
            raise RuntimeError(f"run has not finished (state {self._state.name})")
        return EXIT_CODES[self._state]

    @property
    def error_message(self) -> Optional[str]:
        return self._error_message

    def can_transition_to(self, new_state: State) -> bool:
        return new_state in self.VALID_TRANSITIONS.get(self._state, set())

    def transition(self, new_state: State, error_message: Optional[str] = None) -> None:
        """
        Raises:
            RuntimeError: the transition is not in the table
        """
        if not self.can_transition_to(new_state):
            raise RuntimeError(f"Invalid state transition: {self._state.name} -> {new_state.name}")

        old_state = self._state
        self._state = new_state
        self._error_message = error_message
        if error_message:
            logger.error(f"{new_state.name}: {error_message}")
        logger.debug(f"State: {old_state.name} -> {new_state.name}")

        if self._on_state_change:
            self._on_state_change(old_state, new_state)

    def fail(self, state: State, message: str) -> None:
        if state not in TERMINAL or state is State.DONE:
            raise ValueError(f"{state.name} is not a failure state")
        self.transition(state, message)

    def finish(self) -> None:
        self.transition(State.DONE)

    def __str__(self) -> str:
        return f"StateMachine({self._state.name})"

    def __repr__(self) -> str:
        return self.__str__()
