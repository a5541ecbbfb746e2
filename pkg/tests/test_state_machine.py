import pytest

from src.pipeline.state_machine import EXIT_CODES, State, StateMachine


def test_happy_path():
    seen = []
    machine = StateMachine(on_state_change=lambda old, new: seen.append((old, new)))
    for state in (State.PARSED, State.VALIDATED, State.SEPARATED, State.ORDERED, State.MEASURED):
        machine.transition(state)
    assert not machine.is_terminal
    machine.finish()
    assert machine.is_terminal
    assert machine.exit_code == 0
    assert seen[0] == (State.START, State.PARSED)
    assert seen[-1] == (State.MEASURED, State.DONE)


@pytest.mark.parametrize("path, failure, code", [
    ((), State.PARSE_FAILED, 3),
    ((State.PARSED,), State.INVALID, 2),
    ((State.PARSED, State.VALIDATED, State.SEPARATED), State.NOT_SEPARATED, 4),
    ((State.PARSED, State.VALIDATED), State.NOT_APPLICABLE, 5),
])
def test_failures(path, failure, code):
    machine = StateMachine()
    for state in path:
        machine.transition(state)
    machine.fail(failure, "boom")
    assert machine.state is failure
    assert machine.exit_code == code == EXIT_CODES[failure]
    assert machine.error_message == "boom"


def test_invalid_transition():
    machine = StateMachine()
    with pytest.raises(RuntimeError):
        machine.transition(State.SEPARATED)
    with pytest.raises(RuntimeError):
        machine.exit_code
    machine.transition(State.PARSED)
    machine.fail(State.INVALID, "bad")
    # terminal states have no way out
    assert not machine.can_transition_to(State.VALIDATED)


def test_done_is_not_a_failure():
    machine = StateMachine()
    with pytest.raises(ValueError):
        machine.fail(State.DONE, "nope")
    with pytest.raises(ValueError):
        machine.fail(State.PARSED, "nope")


def test_validate_and_render_finish_early():
    machine = StateMachine()
    machine.transition(State.PARSED)
    machine.transition(State.VALIDATED)
    machine.finish()
    assert machine.exit_code == 0
    assert str(machine) == "StateMachine(DONE)"
