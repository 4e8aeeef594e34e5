"""Turing machines compiled to procedures.

The generated procedure keeps the machine configuration in four solution
variables: ``transition`` (the table), ``current`` (symbol under the head
and state), ``positive_cells`` (cells right of the head at positions
1, 2, ...) and ``negative_cells`` (cells left of the head at -1, -2, ...).
Each loop iteration performs one step; the loop stops once no transition
applies, and the result is non-empty iff the machine halted in its final
state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from ..errors import InvalidMachine

BLANK = "B"
SYMBOLS = ("0", "1", BLANK)
LEFT, RIGHT = "left", "right"
_DIRECTIONS = {"l": LEFT, "left": LEFT, "r": RIGHT, "right": RIGHT}
_STATE_NAME = re.compile(r"^[A-Za-z0-9_]+$")

_NS = "urn:sparqal:tm:"


@dataclass(frozen=True)
class TuringMachineSpec:
    """Deterministic machine over {0, 1} with blank ``B``.

    ``transitions`` holds (state, symbol, new_state, new_symbol, direction)
    tuples. The machine accepts when it halts in ``final``.
    """

    states: tuple[str, ...]
    initial: str
    final: str
    transitions: tuple[tuple[str, str, str, str, str], ...]
    word: str = ""
    name: str = field(default="machine", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        rows = []
        for row in self.transitions:
            if len(row) != 5:
                raise InvalidMachine(f"transition {row!r} must have five components")
            q, a, q2, b, d = row
            direction = _DIRECTIONS.get(str(d).lower())
            if direction is None:
                raise InvalidMachine(f"direction {d!r} must be left or right")
            rows.append((q, a, q2, b, direction))
        object.__setattr__(self, "transitions", tuple(rows))
        self.validate()

    def validate(self) -> None:
        for q in self.states:
            if not _STATE_NAME.match(q):
                raise InvalidMachine(f"state name {q!r} must match [A-Za-z0-9_]+")
        for q in (self.initial, self.final):
            if q not in self.states:
                raise InvalidMachine(f"state {q!r} is not declared")
        seen = set()
        for q, a, q2, b, _ in self.transitions:
            if q not in self.states or q2 not in self.states:
                raise InvalidMachine(f"transition uses undeclared state in {(q, a, q2, b)!r}")
            if a not in SYMBOLS or b not in SYMBOLS:
                raise InvalidMachine(f"symbols must be among {SYMBOLS}")
            if q == self.final:
                raise InvalidMachine(f"final state {q!r} must not have outgoing transitions")
            if (q, a) in seen:
                raise InvalidMachine(f"nondeterministic: two transitions for ({q}, {a})")
            seen.add((q, a))
        if any(c not in "01" for c in self.word):
            raise InvalidMachine("input word must be over {0, 1}")

    def with_word(self, word: str) -> "TuringMachineSpec":
        return replace(self, word=word)

    @property
    def table(self) -> dict[tuple[str, str], tuple[str, str, str]]:
        return {(q, a): (q2, b, d) for q, a, q2, b, d in self.transitions}


def simulate(tm: TuringMachineSpec, max_steps: int = 10_000) -> bool | None:
    """Run ``tm`` directly. True/False for accept/reject, None if still running."""
    table = tm.table
    tape = {i: c for i, c in enumerate(tm.word)}
    head, state = 0, tm.initial
    for _ in range(max_steps):
        step = table.get((state, tape.get(head, BLANK)))
        if step is None:
            return state == tm.final
        state, tape[head], direction = step
        head += 1 if direction == RIGHT else -1
    return None


def _state(q: str) -> str:
    return f"<{_NS}state:{q}>"


def _sym(a: str) -> str:
    return f'"{a}"'


def tm_to_procedure(tm: TuringMachineSpec) -> str:
    """Procedure whose result is non-empty iff ``tm`` accepts ``tm.word``."""
    tm.validate()
    right, left = f"<{_NS}right>", f"<{_NS}left>"
    rows = " ".join(
        f"({_state(q)} {_sym(a)} {_state(q2)} {_sym(b)} {right if d == RIGHT else left})"
        for q, a, q2, b, d in tm.transitions
    )
    head = tm.word[0] if tm.word else BLANK
    cells = " ".join(f"({i} {_sym(c)})" for i, c in enumerate(tm.word[1:], start=1))
    applies = "FILTER(?oldstate = ?c_state && ?oldsymbol = ?c_symbol)"
    return f"""\
# Machine {tm.name} on input "{tm.word}".
LET transition = (
  SELECT ?oldstate ?oldsymbol ?newstate ?newsymbol ?direction WHERE {{
    VALUES (?oldstate ?oldsymbol ?newstate ?newsymbol ?direction) {{ {rows} }}
  }}
);
LET current = (
  SELECT ?c_symbol ?c_state WHERE {{
    VALUES (?c_symbol ?c_state) {{ ({_sym(head)} {_state(tm.initial)}) }}
  }}
);
LET positive_cells = (
  SELECT ?p_pos ?p_symbol WHERE {{
    VALUES (?p_pos ?p_symbol) {{ {cells} }}
  }}
);
LET negative_cells = (
  SELECT ?n_pos ?n_symbol WHERE {{
    VALUES (?n_pos ?n_symbol) {{ }}
  }}
);
DO (
  # S1: next state and the symbol the head lands on; unchanged when halted
  LET new_current = (
    SELECT ?c_symbol ?c_state WHERE {{
      {{
        SELECT (?newstate AS ?c_state) (?landing AS ?c_symbol) WHERE {{
          {{ SELECT ?newstate ?direction WHERE {{
              QVALUES(transition) QVALUES(current)
              {applies}
          }} }}
          {{
            {{ SELECT ({right} AS ?direction) (?p_symbol AS ?landing) WHERE {{
                QVALUES(positive_cells) FILTER(?p_pos = 1) }} }}
            UNION
            {{ SELECT ({right} AS ?direction) ("{BLANK}" AS ?landing) WHERE {{
                FILTER NOT EXISTS {{ QVALUES(positive_cells) FILTER(?p_pos = 1) }} }} }}
            UNION
            {{ SELECT ({left} AS ?direction) (?n_symbol AS ?landing) WHERE {{
                QVALUES(negative_cells) FILTER(?n_pos = -1) }} }}
            UNION
            {{ SELECT ({left} AS ?direction) ("{BLANK}" AS ?landing) WHERE {{
                FILTER NOT EXISTS {{ QVALUES(negative_cells) FILTER(?n_pos = -1) }} }} }}
          }}
        }}
      }}
      UNION
      {{
        QVALUES(current)
        FILTER NOT EXISTS {{ QVALUES(transition) {applies} }}
      }}
    }}
  );
  # S2: cells right of the head
  LET positive_cells = (
    SELECT ?p_pos ?p_symbol WHERE {{
      {{
        SELECT ((?pp - 1) AS ?p_pos) ?p_symbol WHERE {{
          {{ SELECT (?p_pos AS ?pp) ?p_symbol WHERE {{ QVALUES(positive_cells) }} }}
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {right})
          FILTER(?pp > 1)
        }}
      }} UNION {{
        SELECT ((?pp + 1) AS ?p_pos) ?p_symbol WHERE {{
          {{ SELECT (?p_pos AS ?pp) ?p_symbol WHERE {{ QVALUES(positive_cells) }} }}
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {left})
        }}
      }} UNION {{
        SELECT (1 AS ?p_pos) (?newsymbol AS ?p_symbol) WHERE {{
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {left})
        }}
      }}
    }}
  );
  # S3: cells left of the head
  LET negative_cells = (
    SELECT ?n_pos ?n_symbol WHERE {{
      {{
        SELECT ((?np + 1) AS ?n_pos) ?n_symbol WHERE {{
          {{ SELECT (?n_pos AS ?np) ?n_symbol WHERE {{ QVALUES(negative_cells) }} }}
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {left})
          FILTER(?np < -1)
        }}
      }} UNION {{
        SELECT ((?np - 1) AS ?n_pos) ?n_symbol WHERE {{
          {{ SELECT (?n_pos AS ?np) ?n_symbol WHERE {{ QVALUES(negative_cells) }} }}
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {right})
        }}
      }} UNION {{
        SELECT (-1 AS ?n_pos) (?newsymbol AS ?n_symbol) WHERE {{
          QVALUES(transition) QVALUES(current)
          {applies}
          FILTER(?direction = {right})
        }}
      }}
    }}
  );
  # S4
  LET current = (
    SELECT ?c_symbol ?c_state WHERE {{ QVALUES(new_current) }}
  );
) WHILE (ASK {{
  QVALUES(current)
  FILTER NOT EXISTS {{ QVALUES(transition) {applies} }}
}});
LET state = (
  SELECT ?c_state WHERE {{ QVALUES(current) FILTER(?c_state = {_state(tm.final)}) }}
);
RETURN(state);
"""


def _machine(name, states, initial, final, rows) -> TuringMachineSpec:
    return TuringMachineSpec(tuple(states), initial, final, tuple(rows), name=name)


# Accepts every input: one step from q0 to qm whatever the first symbol.
IMMEDIATE_ACCEPT = _machine(
    "immediate-accept", ["q0", "qm"], "q0", "qm",
    [("q0", a, "qm", a, RIGHT) for a in SYMBOLS],
)

# Accepts words with an even number of 1s.
EVEN_ONES = _machine(
    "even-ones", ["even", "odd", "qm"], "even", "qm",
    [
        ("even", "0", "even", "0", RIGHT),
        ("even", "1", "odd", "1", RIGHT),
        ("odd", "0", "odd", "0", RIGHT),
        ("odd", "1", "even", "1", RIGHT),
        ("even", BLANK, "qm", BLANK, RIGHT),
    ],
)

# Three-state busy-beaver rules with blank and 0 read alike. The rule for
# B on 1 is dropped, which bounds every run: inputs either reach the
# A-on-1 halt (accept) or stop in B over a 1 (reject).
BOUNDED_BEAVER = _machine(
    "bounded-beaver", ["A", "B", "C", "qm"], "A", "qm",
    [
        ("A", "0", "B", "1", RIGHT),
        ("A", BLANK, "B", "1", RIGHT),
        ("A", "1", "qm", "1", RIGHT),
        ("B", "0", "C", "0", RIGHT),
        ("B", BLANK, "C", "0", RIGHT),
        ("C", "0", "C", "1", LEFT),
        ("C", BLANK, "C", "1", LEFT),
        ("C", "1", "A", "1", LEFT),
    ],
)

MACHINES = {m.name: m for m in (IMMEDIATE_ACCEPT, EVEN_ONES, BOUNDED_BEAVER)}
