'''Sticker-level model of the n x n x n cube.

States are flat strings of 6*n*n colour letters in face-major order
U, L, F, R, B, D (row-major inside each face), so the sticker at
(face, row, col) lives at index face_ordinal * n^2 + row * n + col.
Solved colours: U=W, L=O, F=G, R=R, B=B, D=Y.

A move is a clockwise quarter/half/anticlockwise turn of one slab of
cells, named by the face it is viewed from and its depth from that face
(depth 1 is the face layer itself). Depths run up to floor(n/2); on odd
cubes the central slab (n+1)/2 is also addressable, and the letters
M, E, S alias the central slabs that turn like L, D and F.

Move notation grammar accepted by the parser:

    sequence := token (whitespace token)*
    token    := slice | group
    slice    := [depth] FACE [suffix]      depth is a decimal >= 2
    FACE     := U | D | L | R | F | B | M | E | S
    suffix   := ' | 2 | 2' | 3
    group    := '[' sequence ',' sequence ']' [suffix]   commutator a b a' b'
              | '[' sequence ':' sequence ']' [suffix]   conjugate  a b a'

On a slice token the suffix fixes the quarter-turn count (mod 4, with
multiples of four dropped); on a group it inverts or repeats the whole
expansion. Groups nest.
'''

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

FACES = ('U', 'L', 'F', 'R', 'B', 'D')
FACE_ORDINAL = {f: i for i, f in enumerate(FACES)}
FACE_COLOR = {'U': 'W', 'L': 'O', 'F': 'G', 'R': 'R', 'B': 'B', 'D': 'Y'}
COLORS = tuple(FACE_COLOR[f] for f in FACES)

# central-slab letters and the face whose turn direction they follow
CENTRAL_LETTERS = {'M': 'L', 'E': 'D', 'S': 'F'}


class IllegalDepth(ValueError):
    '''Raised when a move names a slab the cube does not have.'''


class ParseError(ValueError):
    '''Raised on malformed move text; carries the offending position.'''

    def __init__(self, message, position):
        super().__init__(f'{message} (at position {position})')
        self.position = position


@dataclass(frozen=True)
class CubeSpec:
    '''Size descriptor for an n x n x n cube, n >= 2.'''

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f'cube size must be an integer >= 2, got {self.n!r}')

    @property
    def sticker_count(self):
        return 6 * self.n * self.n

    @property
    def max_depth(self):
        '''Deepest addressable slab: ceil(n/2).'''
        return (self.n + 1) // 2

    @property
    def central_depth(self):
        '''Depth of the central slab, or None on even cubes.'''
        return (self.n + 1) // 2 if self.n % 2 else None


@dataclass(frozen=True)
class Move:
    '''One slab turn: face letter, depth from that face, quarter turns (1..3, clockwise).'''

    face: str
    depth: int = 1
    quarter_turns: int = 1

    def __post_init__(self):
        if self.face not in FACES:
            raise ValueError(f'unknown face {self.face!r}')
        if not isinstance(self.depth, int) or self.depth < 1:
            raise ValueError(f'depth must be a positive integer, got {self.depth!r}')
        if self.quarter_turns not in (1, 2, 3):
            raise ValueError(f'quarter_turns must be 1, 2 or 3, got {self.quarter_turns!r}')

    def inverse(self):
        return Move(self.face, self.depth, 4 - self.quarter_turns)

    def is_legal(self, spec):
        if self.depth <= spec.n // 2:
            return True
        return spec.n % 2 == 1 and self.depth == (spec.n + 1) // 2

    def require_legal(self, spec):
        if not self.is_legal(spec):
            raise IllegalDepth(
                f'depth {self.depth} of face {self.face} does not exist on a '
                f'{spec.n}x{spec.n}x{spec.n} cube')


@dataclass(frozen=True)
class MoveSequence:
    '''Immutable list of moves, applied left to right.'''

    moves: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'moves', tuple(self.moves))

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)

    def __add__(self, other):
        return MoveSequence(self.moves + tuple(other))

    @staticmethod
    def of(*moves):
        return MoveSequence(tuple(moves))


@dataclass(frozen=True)
class CubeState:
    '''Immutable sticker assignment; equality is positionwise.'''

    n: int
    stickers: str

    def __post_init__(self):
        if len(self.stickers) != 6 * self.n * self.n:
            raise ValueError('sticker string has wrong length for this cube size')

    @property
    def spec(self):
        return CubeSpec(self.n)

    def sticker(self, face, row, col):
        n = self.n
        return self.stickers[FACE_ORDINAL[face] * n * n + row * n + col]

    def color_counts(self):
        counts = {}
        for ch in self.stickers:
            counts[ch] = counts.get(ch, 0) + 1
        return counts


def sticker_index(n, face, row, col):
    return FACE_ORDINAL[face] * n * n + row * n + col


# --- geometry -------------------------------------------------------------
#
# Cells live at integer coordinates (x, y, z) in 0..n-1 with x growing to
# the right, y up and z toward the viewer. Each sticker is a (cell, outward
# normal) pair.

_FACE_NORMAL = {
    'U': (0, 1, 0), 'D': (0, -1, 0), 'R': (1, 0, 0),
    'L': (-1, 0, 0), 'F': (0, 0, 1), 'B': (0, 0, -1),
}


def _cell_of(face, r, c, n):
    if face == 'U':
        return (c, n - 1, r)
    if face == 'D':
        return (c, 0, n - 1 - r)
    if face == 'F':
        return (c, n - 1 - r, n - 1)
    if face == 'B':
        return (n - 1 - c, n - 1 - r, 0)
    if face == 'L':
        return (0, n - 1 - r, c)
    return (n - 1, n - 1 - r, n - 1 - c)  # R


# clockwise quarter turn of the whole coordinate frame, viewed from each face
_ROT_CELL = {
    'U': lambda x, y, z, n: (n - 1 - z, y, x),
    'D': lambda x, y, z, n: (z, y, n - 1 - x),
    'R': lambda x, y, z, n: (x, z, n - 1 - y),
    'L': lambda x, y, z, n: (x, n - 1 - z, y),
    'F': lambda x, y, z, n: (y, n - 1 - x, z),
    'B': lambda x, y, z, n: (n - 1 - y, x, z),
}

_ROT_DIR = {
    'U': lambda dx, dy, dz: (-dz, dy, dx),
    'D': lambda dx, dy, dz: (dz, dy, -dx),
    'R': lambda dx, dy, dz: (dx, dz, -dy),
    'L': lambda dx, dy, dz: (dx, -dz, dy),
    'F': lambda dx, dy, dz: (dy, -dx, dz),
    'B': lambda dx, dy, dz: (-dy, dx, dz),
}

# which coordinate a slab of each face family fixes, and at what value
_SLAB_AXIS = {'U': 1, 'D': 1, 'R': 0, 'L': 0, 'F': 2, 'B': 2}


def _slab_value(face, depth, n):
    if face in ('U', 'R', 'F'):
        return n - depth
    return depth - 1


@functools.lru_cache(maxsize=None)
def _geometry(n):
    '''Per-index (cell, normal) plus the reverse lookup.'''
    placement = []
    lookup = {}
    for face in FACES:
        normal = _FACE_NORMAL[face]
        for r in range(n):
            for c in range(n):
                cell = _cell_of(face, r, c, n)
                placement.append((cell, normal))
                lookup[(cell, normal)] = len(placement) - 1
    return placement, lookup


def sticker_position(spec, index):
    '''(cell, outward normal) of a sticker index; inverse of position lookup.'''
    placement, _ = _geometry(spec.n)
    return placement[index]


@functools.lru_cache(maxsize=None)
def _quarter_turn_permutation(n, face, depth):
    placement, lookup = _geometry(n)
    axis = _SLAB_AXIS[face]
    value = _slab_value(face, depth, n)
    rot_cell = _ROT_CELL[face]
    rot_dir = _ROT_DIR[face]
    perm = list(range(6 * n * n))
    for src, (cell, normal) in enumerate(placement):
        if cell[axis] != value:
            continue
        new_cell = rot_cell(cell[0], cell[1], cell[2], n)
        new_normal = rot_dir(*normal)
        perm[src] = lookup[(new_cell, new_normal)]
    return tuple(perm)


@functools.lru_cache(maxsize=None)
def _move_permutation(n, face, depth, quarter_turns):
    base = _quarter_turn_permutation(n, face, depth)
    perm = base
    for _ in range(quarter_turns - 1):
        perm = tuple(base[p] for p in perm)
    return perm


def sticker_permutation(spec, move):
    '''Destination map p of a move: applying the move sends the sticker at
    index i to index p[i], i.e. apply_move(s, move).stickers[p[i]] == s.stickers[i].'''
    move.require_legal(spec)
    return _move_permutation(spec.n, move.face, move.depth, move.quarter_turns)


def solved_state(spec):
    n = spec.n
    return CubeState(n, ''.join(FACE_COLOR[f] * (n * n) for f in FACES))


def legal_slab_moves(spec, include_central=False, quarter_turns=(1,)):
    '''All distinct slab moves: one per (face, depth, q).

    The central slab of an odd cube is reachable from two opposite faces;
    it is excluded by default because turning it displaces the immobile
    face centres, which takes a state outside the space of reassemblies.
    '''
    moves = []
    for face in FACES:
        depths = list(range(1, spec.n // 2 + 1))
        if include_central and spec.central_depth is not None and face in 'LDF':
            # The central slab sits at equal depth from both opposite faces,
            # so it is listed once, from the face its slice letter resolves to.
            depths.append(spec.central_depth)
        for depth in depths:
            for q in quarter_turns:
                moves.append(Move(face, depth, q))
    return moves


def apply_move(state, move):
    perm = sticker_permutation(state.spec, move)
    old = state.stickers
    new = [''] * len(old)
    for src, dst in enumerate(perm):
        new[dst] = old[src]
    return CubeState(state.n, ''.join(new))


def apply_sequence(state, sequence):
    for move in sequence:
        state = apply_move(state, move)
    return state


def invert_sequence(sequence):
    return MoveSequence(tuple(m.inverse() for m in reversed(tuple(sequence))))


def sequence_permutation(spec, sequence):
    '''Destination map of a whole sequence, composed left to right.'''
    total = list(range(spec.sticker_count))
    for move in sequence:
        perm = sticker_permutation(spec, move)
        total = [perm[t] for t in total]
    return tuple(total)


# --- parsing and formatting ------------------------------------------------


class _Scanner:
    def __init__(self, text, spec):
        self.text = text
        self.spec = spec
        self.pos = 0

    def eof(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def skip_ws(self):
        while not self.eof() and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message, position=None):
        raise ParseError(message, self.pos if position is None else position)

    def parse_sequence(self, terminators):
        moves = []
        while True:
            self.skip_ws()
            if self.eof() or self.peek() in terminators:
                return moves
            moves.extend(self.parse_token())

    def parse_token(self):
        if self.peek() == '[':
            return self.parse_group()
        return self.parse_slice()

    def read_suffix(self):
        '''Return quarter-turn count and, for groups, (repeats, inverted).'''
        ch = self.peek()
        if ch == "'":
            self.pos += 1
            return 3, (1, True)
        if ch == '2':
            self.pos += 1
            if self.peek() == "'":
                self.pos += 1
                return 2, (2, True)
            return 2, (2, False)
        if ch == '3':
            self.pos += 1
            return 3, (3, False)
        return 1, (1, False)

    def parse_slice(self):
        start = self.pos
        depth_text = ''
        while self.peek().isdigit():
            depth_text += self.peek()
            self.pos += 1
        face = self.peek()
        if face not in FACES and face not in CENTRAL_LETTERS:
            self.fail(f'expected a face letter, found {face!r}' if face
                      else 'expected a face letter, found end of input', start)
        self.pos += 1
        if depth_text:
            depth = int(depth_text)
            if depth < 2:
                self.fail('an explicit depth must be at least 2', start)
        else:
            depth = 1
        if face in CENTRAL_LETTERS:
            if depth_text:
                self.fail(f'{face} names the central slab and takes no depth', start)
            if self.spec is None:
                self.fail(f'{face} needs a known cube size to resolve its depth', start)
            if self.spec.n % 2 == 0:
                self.fail(f'{face} only exists on odd cubes', start)
            depth = (self.spec.n + 1) // 2
            face = CENTRAL_LETTERS[face]
        quarter_turns, _ = self.read_suffix()
        move = Move(face, depth, quarter_turns)
        if self.spec is not None:
            move.require_legal(self.spec)
        return [move]

    def parse_group(self):
        start = self.pos
        self.pos += 1  # consume '['
        first = self.parse_sequence(',:')
        self.skip_ws()
        sep = self.peek()
        if sep not in ',:':
            self.fail("expected ',' or ':' inside a group", start)
        self.pos += 1
        second = self.parse_sequence(']')
        self.skip_ws()
        if self.peek() != ']':
            self.fail("unclosed group, expected ']'", start)
        self.pos += 1
        inv_first = [m.inverse() for m in reversed(first)]
        if sep == ',':
            inv_second = [m.inverse() for m in reversed(second)]
            moves = first + second + inv_first + inv_second
        else:
            moves = first + second + inv_first
        _, (repeats, inverted) = self.read_suffix()
        if inverted:
            moves = [m.inverse() for m in reversed(moves)]
        return moves * repeats


def parse_move_sequence(text, spec=None):
    '''Parse move text into a flat MoveSequence (groups are expanded).

    With a spec, slab depths are legality-checked (IllegalDepth) and the
    central letters M/E/S resolve; without one they are a ParseError.
    '''
    scanner = _Scanner(text, spec)
    moves = scanner.parse_sequence('')
    scanner.skip_ws()
    if not scanner.eof():
        scanner.fail(f'unexpected character {scanner.peek()!r}')
    return MoveSequence(tuple(moves))


_SUFFIX = {1: '', 2: '2', 3: "'"}


def format_move(move, spec=None):
    if spec is not None and spec.central_depth == move.depth:
        for letter, face in CENTRAL_LETTERS.items():
            if face == move.face:
                return letter + _SUFFIX[move.quarter_turns]
    depth_text = '' if move.depth == 1 else str(move.depth)
    return depth_text + move.face + _SUFFIX[move.quarter_turns]


def format_move_sequence(sequence, spec=None):
    '''Space-separated token text; parse(format(seq)) returns seq unchanged.'''
    return ' '.join(format_move(m, spec) for m in sequence)


# --- rendering and serialisation -------------------------------------------

_ANSI_CODE = {'W': '97', 'O': '38;5;208', 'G': '92', 'R': '91', 'B': '94', 'Y': '93'}


def _paint(ch, ansi):
    if not ansi:
        return ch
    return f'\x1b[{_ANSI_CODE[ch]}m{ch}\x1b[0m'


def render_net(state, ansi=False):
    '''Flat net with U on top, the L F R B strip in the middle, D below.

    Produces exactly 3n + 2 lines (two of them blank separators).
    '''
    n = state.n
    pad = ' ' * (n + 1)
    lines = []
    for r in range(n):
        lines.append(pad + ''.join(_paint(state.sticker('U', r, c), ansi) for c in range(n)))
    lines.append('')
    for r in range(n):
        row = []
        for face in ('L', 'F', 'R', 'B'):
            row.append(''.join(_paint(state.sticker(face, r, c), ansi) for c in range(n)))
        lines.append(' '.join(row))
    lines.append('')
    for r in range(n):
        lines.append(pad + ''.join(_paint(state.sticker('D', r, c), ansi) for c in range(n)))
    return '\n'.join(lines)


def state_to_json_dict(state):
    return {'n': state.n, 'stickers': list(state.stickers)}


def state_from_json_dict(data):
    try:
        n = data['n']
        raw = data['stickers']
    except (KeyError, TypeError):
        raise ValueError('state document needs "n" and "stickers" fields')
    if isinstance(raw, list):
        raw = ''.join(raw)
    if not isinstance(n, int) or not isinstance(raw, str):
        raise ValueError('malformed state document')
    bad = sorted(set(raw) - set(COLORS))
    if bad:
        raise ValueError(f'unknown colour letters {bad} in state document')
    return CubeState(n, raw)


def state_to_json(state):
    return json.dumps(state_to_json_dict(state))


def state_from_json(text):
    return state_from_json_dict(json.loads(text))
