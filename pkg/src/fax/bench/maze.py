"""Grid mazes encoded as DFAs over moves U, D, L, R.

Cells are either open or walls.  The walker starts top-left and wins on
reaching the bottom-right exit; stepping into a wall or off the grid is
fatal.  The exit is absorbing, so any word with an accepted prefix is
accepted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..automata.core import Alphabet, Automaton, Word, accepts
from ..errors import FormatError, GenerationError
from .rng import SplitMix64

MOVES = Alphabet("UDLR")
_DELTA = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}
MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class MazeInstance:
    height: int
    width: int
    walls: tuple[tuple[bool, ...], ...]
    dfa: Automaton
    solution_path: Word
    rejected_paths: tuple[Word, ...]
    seed: int
    wall_prob: float = 1 / 3


def maze_sizes(low: int = 10, high: int = 50) -> list[tuple[int, int]]:
    """All (height, width) with ``low <= height <= width <= high``."""
    return [(h, w) for h in range(low, high + 1) for w in range(h, high + 1)]


def maze_dfa(walls) -> Automaton:
    h, w = len(walls), len(walls[0])
    cells = [(r, c) for r in range(h) for c in range(w) if not walls[r][c]]
    ids = {cell: i for i, cell in enumerate(cells)}
    sink = len(cells)
    exit_id = ids[(h - 1, w - 1)]
    transitions = []
    for (r, c), q in ids.items():
        for name, (dr, dc) in _DELTA.items():
            if q == exit_id:
                dst = exit_id
            else:
                dst = ids.get((r + dr, c + dc), sink)
            transitions.append((q, [MOVES.id(name)], dst))
    transitions.append((sink, [(0, 3)], sink))
    return Automaton(MOVES, sink + 1, frozenset([ids[(0, 0)]]), frozenset([exit_id]), transitions)


def _shortest_path(walls, rng: SplitMix64) -> list[str] | None:
    """BFS with shuffled neighbour order, so ties between shortest paths are random."""
    h, w = len(walls), len(walls[0])
    goal = (h - 1, w - 1)
    parent = {(0, 0): None}
    queue = deque([(0, 0)])
    while queue:
        cell = queue.popleft()
        if cell == goal:
            break
        names = list(_DELTA)
        rng.shuffle(names)
        for name in names:
            dr, dc = _DELTA[name]
            nxt = (cell[0] + dr, cell[1] + dc)
            if 0 <= nxt[0] < h and 0 <= nxt[1] < w and not walls[nxt[0]][nxt[1]] and nxt not in parent:
                parent[nxt] = (cell, name)
                queue.append(nxt)
    if goal not in parent:
        return None
    moves = []
    cell = goal
    while parent[cell] is not None:
        cell, name = parent[cell]
        moves.append(name)
    return moves[::-1]


def _perturb(rng: SplitMix64, path: Word, changes: int, dfa: Automaton) -> Word:
    for _ in range(MAX_ATTEMPTS):
        ids = list(path.symbols)
        for pos in rng.sample(range(len(ids)), changes):
            ids[pos] = rng.choice([s for s in range(4) if s != ids[pos]])
        cand = Word(MOVES, tuple(ids))
        if not accepts(dfa, cand):
            return cand
    raise GenerationError(f"could not find a rejected path with {changes} changes")


def gen_maze(height: int, width: int, wall_prob: float = 1 / 3, seed: int = 0) -> MazeInstance:
    if height < 2 or width < 2:
        raise ValueError("maze needs at least 2x2 cells")
    if not (0 <= wall_prob < 1):
        raise ValueError("wall probability must be in [0, 1)")
    rng = SplitMix64(seed)
    for _ in range(MAX_ATTEMPTS):
        walls = [[rng.random() < wall_prob for _ in range(width)] for _ in range(height)]
        walls[0][0] = walls[height - 1][width - 1] = False
        path = _shortest_path(walls, rng)
        if path is not None:
            break
    else:
        raise GenerationError("no solvable maze within the retry cap")
    walls = tuple(tuple(row) for row in walls)
    dfa = maze_dfa(walls)
    solution = Word.parse(MOVES, "".join(path))
    changes = [k for k in range(1, 6) if k <= len(solution)]
    rejected = tuple(_perturb(rng, solution, k, dfa) for k in changes)
    return MazeInstance(height, width, walls, dfa, solution, rejected, seed, wall_prob)


def dumps_maze(m: MazeInstance) -> str:
    lines = [
        "fax-maze v1",
        f"size: {m.height} {m.width}",
        f"seed: {m.seed}",
    ]
    lines += ["".join("#" if wall else "." for wall in row) for row in m.walls]
    lines.append(f"solution: {m.solution_path}")
    lines += [f"rejected: {w}" for w in m.rejected_paths]
    return "\n".join(lines) + "\n"


def loads_maze(text: str) -> MazeInstance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "fax-maze v1":
        raise FormatError("missing header 'fax-maze v1'", 1)
    try:
        h, w = map(int, lines[1].split(":", 1)[1].split())
        seed = int(lines[2].split(":", 1)[1])
    except (IndexError, ValueError):
        raise FormatError("bad size or seed line", 2) from None
    grid = lines[3:3 + h]
    if len(grid) != h or any(len(row) != w or set(row) - set("#.") for row in grid):
        raise FormatError("wall grid does not match the declared size", 4)
    walls = tuple(tuple(ch == "#" for ch in row) for row in grid)
    solution = None
    rejected = []
    for lineno, ln in enumerate(lines[3 + h:], 4 + h):
        key, _, value = ln.partition(":")
        try:
            word = Word.parse(MOVES, value.strip())
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if key == "solution":
            solution = word
        elif key == "rejected":
            rejected.append(word)
        elif ln.strip():
            raise FormatError(f"unexpected line {ln!r}", lineno)
    if solution is None:
        raise FormatError("missing solution line")
    return MazeInstance(h, w, walls, maze_dfa(walls), solution, tuple(rejected), seed)
