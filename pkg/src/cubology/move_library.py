'''Short move words with machine-checked effects.

Each builder returns a NamedMove: a word in the slice-move grammar plus a
descriptor of what it is supposed to do (one orbit touched, a stated cycle
type there, identity everywhere else). The descriptor is re-verified on
construction for the requested cube size, so holding a NamedMove is holding
a checked fact about that cube.

Cycle verification runs on the raw sticker permutation of the word rather
than on the canonical ConfigTuple. Centre orbits carry four stickers of
each colour, and when one leg of a 3-cycle joins two same-coloured
stickers, the canonical relabeling in decompose() folds that leg away and
reports a longer cycle. The sticker permutation has no such ambiguity: the
word either moves exactly the stickers of three slots of the named orbit
or it does not. Orientation-pair words are checked through decompose()
instead, since twists and flips are defined by the decomposition and the
relabeling is harmless on corners and single edges.
'''

import re
from dataclasses import dataclass

from .cube_model import (
    CubeState,
    MoveSequence,
    invert_sequence,
    parse_move_sequence,
    sequence_permutation,
    solved_state,
)
from .cubology_law import check_validity
from .decomposition import build_atlas, decompose, permutation_sign


class EvenCube(ValueError):
    '''A word that needs the single-edge family was asked of an even cube.'''


class OddCube(ValueError):
    '''A word defined only for even cubes was asked of an odd cube.'''


class IndexOutOfRange(ValueError):
    '''A slice index does not name an interior orbit of this cube.'''


FAMILY_WORDS = {
    'corner': 'corners',
    'single': 'single edges',
    'coupled': 'coupled orbit',
    'center_corner': 'diagonal centre orbit',
    'center_edge': 'off-diagonal centre orbit',
}


@dataclass(frozen=True)
class EffectDescriptor:
    '''What a word is supposed to do to the piece families.

    kind is one of 'three_cycle', 'twist_pair', 'flip_pair' or
    'odd_permutation'. family uses the atlas names ('corner', 'single',
    'coupled', 'center_corner', 'center_edge') and key is the orbit index
    or label where the family has several orbits, None otherwise. Slots
    outside the named orbit must stay fixed, except where the kind itself
    allows motion: a three_cycle on corners may twist the cycled corners,
    and an odd_permutation may move centres as long as the first law still
    accounts for them.
    '''

    kind: str
    family: str
    key: object = None

    def describe(self):
        where = FAMILY_WORDS[self.family]
        if self.key is not None:
            where = '%s %s' % (where, self.key)
        wording = {
            'three_cycle': '3-cycle on %s, rest id',
            'twist_pair': 'twist pair on %s, permutations id',
            'flip_pair': 'flip pair on %s, permutations id',
            'odd_permutation':
                'odd permutation on %s, corners and single edges fixed',
        }[self.kind]
        return wording % where


@dataclass(frozen=True)
class EffectReport:
    '''Outcome of checking a word against a descriptor.'''

    ok: bool
    checks: tuple

    def failing(self):
        return tuple(c for c in self.checks if not c[1])


@dataclass(frozen=True)
class NamedMove:
    '''A verified word: name, builder parameters, sequence, effect.'''

    name: str
    n: int
    params: tuple
    sequence: MoveSequence
    expected_effect: EffectDescriptor


def parse_effect(text):
    '''Read a short prose descriptor such as 'corner 3-cycle' or
    'center-edge (2,3) 3-cycle' into an EffectDescriptor.'''
    low = text.lower()
    key = None
    pair = re.search(r'\((\d+)\s*,\s*(\d+)\)', low)
    if pair:
        key = (int(pair.group(1)), int(pair.group(2)))
        low = low.replace(pair.group(0), ' ')
    if 'odd permutation' in low:
        kind = 'odd_permutation'
    elif 'twist' in low:
        kind = 'twist_pair'
    elif 'flip' in low:
        kind = 'flip_pair'
    elif '3-cycle' in low or 'three-cycle' in low or '3 cycle' in low:
        kind = 'three_cycle'
    else:
        raise ValueError('no cycle type in descriptor %r' % (text,))
    for phrase, family in (
            ('center-corner', 'center_corner'),
            ('centre-corner', 'center_corner'),
            ('center corner', 'center_corner'),
            ('diagonal', 'center_corner'),
            ('center-edge', 'center_edge'),
            ('centre-edge', 'center_edge'),
            ('center edge', 'center_edge'),
            ('coupled', 'coupled'),
            ('single', 'single'),
            ('corner', 'corner'),
    ):
        if phrase in low:
            break
    else:
        raise ValueError('no family in descriptor %r' % (text,))
    if key is None:
        stripped = re.sub(r'3[- ]cycle', ' ', low)
        index = re.search(r'\b(\d+)\b', stripped)
        if index:
            key = int(index.group(1))
    return EffectDescriptor(kind, family, key)


def _positions_of(atlas, family, key, slot_id):
    if family == 'corner':
        return atlas.corners[slot_id].positions
    if family == 'single':
        slot = atlas.single_edges[slot_id]
        return (slot.marked_position, slot.other_position)
    if family == 'coupled':
        slot = atlas.coupled[key][slot_id]
        return (slot.lead_position, slot.trail_position)
    if family == 'center_corner':
        return (atlas.center_corners[key][slot_id].position,)
    return (atlas.center_edges[key][slot_id].position,)


def _family_positions(atlas, family, key=None):
    if family == 'corner':
        count = len(atlas.corners)
    elif family == 'single':
        count = len(atlas.single_edges)
    else:
        count = 24
    out = []
    for slot_id in range(count):
        out.extend(_positions_of(atlas, family, key, slot_id))
    return frozenset(out)


def _check_three_cycle(atlas, perm, moved, descriptor, checks):
    try:
        action = atlas.slot_action(perm, descriptor.family, descriptor.key)
    except (ValueError, KeyError) as exc:
        checks.append(('orbit action', False, str(exc)))
        return
    cycled = [s for s, t in enumerate(action) if t != s]
    if len(cycled) != 3:
        checks.append(('single 3-cycle', False,
                       '%d slots move: %s' % (len(cycled), cycled)))
        return
    a = cycled[0]
    closed = action[action[action[a]]] == a
    checks.append(('single 3-cycle', closed,
                   'slots (%d %d %d)' % (a, action[a], action[action[a]])))
    allowed = set()
    for slot_id in cycled:
        allowed.update(
            _positions_of(atlas, descriptor.family, descriptor.key, slot_id))
    stray = sorted(moved - allowed)
    checks.append(('rest id', not stray,
                   'stickers outside the cycled slots move: %s' % stray[:8]
                   if stray else 'no sticker outside the cycled slots moves'))


def _check_orientation_pair(atlas, perm, moved, descriptor, checks):
    config = decompose(_state_after(atlas, perm), atlas)
    if descriptor.kind == 'twist_pair':
        vec = config.corner_twists
        perm_id = config.corner_perm == tuple(range(8))
        touched = {s: v for s, v in enumerate(vec) if v}
        good = sorted(touched.values()) == [1, 2]
        label = 'two twists, +1 and -1'
    else:
        vec = config.single_edge_flips
        perm_id = config.single_edge_perm == tuple(range(12))
        touched = {s: v for s, v in enumerate(vec) if v}
        good = len(touched) == 2
        label = 'two flips'
    checks.append(('family permutation id', perm_id, 'perm fixed'))
    checks.append((label, good, 'slots %s' % sorted(touched)))
    allowed = set()
    for slot_id in touched:
        allowed.update(
            _positions_of(atlas, descriptor.family, None, slot_id))
    stray = sorted(moved - allowed)
    checks.append(('rest id', not stray,
                   'stickers outside the pair move: %s' % stray[:8]
                   if stray else 'no sticker outside the pair moves'))


def _check_odd_permutation(atlas, perm, moved, descriptor, checks):
    frozen = _family_positions(atlas, 'corner')
    if atlas.single_edges is not None:
        frozen = frozen | _family_positions(atlas, 'single')
    stray = sorted(moved & frozen)
    checks.append(('corners and single edges fixed', not stray,
                   'sticker positions %s move' % stray[:8]
                   if stray else 'all fixed'))
    try:
        action = atlas.slot_action(perm, 'coupled', descriptor.key)
    except (ValueError, KeyError) as exc:
        checks.append(('orbit action', False, str(exc)))
        return
    sign = permutation_sign(action)
    checks.append(('odd permutation on the orbit', sign == -1,
                   'sign %+d' % sign))
    config = decompose(_state_after(atlas, perm), atlas)
    report = check_validity(config, atlas)
    checks.append(('state stays solvable', report.valid,
                   'first law holds' if report.valid
                   else str(report.failing())))


def _inverse(perm):
    out = [0] * len(perm)
    for src, dst in enumerate(perm):
        out[dst] = src
    return out


def _state_after(atlas, perm):
    base = solved_state(atlas.spec).stickers
    inv = _inverse(perm)
    return CubeState(atlas.spec.n, ''.join(base[i] for i in inv))


def verify_cycle_structure(spec, sequence, descriptor):
    '''Check a word against a descriptor, returning an EffectReport.

    The descriptor may be an EffectDescriptor or a short prose string
    (see parse_effect). The report carries one (label, passed, detail)
    triple per check, so a failure names the actual observed effect.
    '''
    if isinstance(descriptor, str):
        descriptor = parse_effect(descriptor)
    atlas = build_atlas(spec)
    perm = sequence_permutation(spec, sequence)
    moved = frozenset(p for p, q in enumerate(perm) if q != p)
    checks = []
    if descriptor.kind == 'three_cycle':
        _check_three_cycle(atlas, perm, moved, descriptor, checks)
    elif descriptor.kind in ('twist_pair', 'flip_pair'):
        _check_orientation_pair(atlas, perm, moved, descriptor, checks)
    elif descriptor.kind == 'odd_permutation':
        _check_odd_permutation(atlas, perm, moved, descriptor, checks)
    else:
        raise ValueError('unknown effect kind %r' % (descriptor.kind,))
    return EffectReport(ok=all(c[1] for c in checks), checks=tuple(checks))


def _named(name, spec, params, text, descriptor):
    sequence = parse_move_sequence(text, spec)
    report = verify_cycle_structure(spec, sequence, descriptor)
    if not report.ok:
        raise AssertionError(
            'word for %s fails its contract on n=%d: %s'
            % (name, spec.n, report.failing()))
    return NamedMove(name, spec.n, params, sequence, descriptor)


def corner_three_cycle(spec):
    '''[[R:U],D]: 3-cycle on corners, identity elsewhere apart from the
    cycled corners' twists. Works on every cube size.'''
    return _named('corner_three_cycle', spec, (), "[[R:U],D]",
                  EffectDescriptor('three_cycle', 'corner'))


def single_edge_three_cycle(spec):
    '''[F,[R:S]]: 3-cycle on single edges, identity elsewhere. Odd cubes
    only, since even cubes have no single-edge family.'''
    if spec.n % 2 == 0:
        raise EvenCube('a %d-cube has no single edges' % spec.n)
    return _named('single_edge_three_cycle', spec, (), "[F,[R:S]]",
                  EffectDescriptor('three_cycle', 'single'))


def center_three_cycle(spec, i, j):
    '''[[jR',iD],F']: 3-cycle on the diagonal centre orbit i when i = j,
    on the off-diagonal centre orbit (i, j) when i differs from j. When j
    names the central column of an odd cube the slice is written M, which
    is the same slab turned the other way.'''
    half = spec.n // 2
    ceil_half = (spec.n + 1) // 2
    if not 2 <= i <= half:
        raise IndexOutOfRange(
            'row index %d is outside 2..%d on a %d-cube' % (i, half, spec.n))
    if not 2 <= j <= ceil_half:
        raise IndexOutOfRange(
            'column index %d is outside 2..%d on a %d-cube'
            % (j, ceil_half, spec.n))
    if spec.central_depth is not None and j == spec.central_depth:
        text = "[[M,%dD],F']" % i
    else:
        text = "[[%dR',%dD],F']" % (j, i)
    if i == j:
        descriptor = EffectDescriptor('three_cycle', 'center_corner', i)
    else:
        descriptor = EffectDescriptor('three_cycle', 'center_edge', (i, j))
    return _named('center_three_cycle', spec, (i, j), text, descriptor)


def coupled_edge_three_cycle(spec, i):
    '''[[F',U],iD]: 3-cycle on coupled orbit i, identity elsewhere.'''
    half = spec.n // 2
    if not 2 <= i <= half:
        raise IndexOutOfRange(
            'orbit index %d is outside 2..%d on a %d-cube'
            % (i, half, spec.n))
    return _named('coupled_edge_three_cycle', spec, (i,),
                  "[[F',U],%dD]" % i,
                  EffectDescriptor('three_cycle', 'coupled', i))


def coupled_edge_parity_move(spec, i):
    '''An odd permutation on coupled orbit i that fixes every corner and
    single edge; centres move only in ways the first law accounts for.

    The word conjugates a core of U2/F2 slab turns by the self-inverse
    prefix R2 2R2 .. iR2 B2. Read as plain concatenation the two halves
    leave the corners permuted, which breaks the contract, so the grouped
    reading prefix * core * prefix' is used; it checks out on every even
    cube in range.'''
    if spec.n % 2:
        raise OddCube('a %d-cube has no coupled-orbit parity move' % spec.n)
    half = spec.n // 2
    if not 2 <= i <= half:
        raise IndexOutOfRange(
            'orbit index %d is outside 2..%d on a %d-cube'
            % (i, half, spec.n))
    prefix = 'R2 ' + ' '.join('%dR2' % d for d in range(2, i + 1)) + ' B2'
    core = "U2 %dL U2 %dR' U2 %dR U2 F2 %dR F2 %dL'" % (i, i, i, i, i)
    return _named('coupled_edge_parity_move', spec, (i,),
                  '[%s:%s]' % (prefix, core),
                  EffectDescriptor('odd_permutation', 'coupled', i))


def corner_twist_pair(spec):
    '''[[F,L']2,U]: every permutation identity, two corners twisted by
    +1 and -1. Works on every cube size.'''
    return _named('corner_twist_pair', spec, (), "[[F,L']2,U]",
                  EffectDescriptor('twist_pair', 'corner'))


def single_edge_flip_pair(spec):
    '''[FEF2E2F,U]: every permutation identity, two single edges flipped.
    Odd cubes only.'''
    if spec.n % 2 == 0:
        raise EvenCube('a %d-cube has no single edges' % spec.n)
    return _named('single_edge_flip_pair', spec, (), "[FEF2E2F,U]",
                  EffectDescriptor('flip_pair', 'single'))


def conjugate_setup(setup, core):
    '''setup then core then setup inverted. Conjugation carries a cycle to
    a cycle of the same type in the same orbit, so the core's descriptor
    stays valid for the result (re-check with verify_cycle_structure when
    it matters).'''
    sequence = core.sequence if isinstance(core, NamedMove) else core
    setup = MoveSequence(tuple(setup))
    return setup + sequence + invert_sequence(setup)


def all_named_moves(spec):
    '''Every named move whose preconditions hold on this cube size, each
    verified on construction.'''
    moves = [corner_three_cycle(spec), corner_twist_pair(spec)]
    if spec.n % 2:
        moves.append(single_edge_three_cycle(spec))
        moves.append(single_edge_flip_pair(spec))
    half = spec.n // 2
    ceil_half = (spec.n + 1) // 2
    for i in range(2, half + 1):
        moves.append(coupled_edge_three_cycle(spec, i))
        if spec.n % 2 == 0:
            moves.append(coupled_edge_parity_move(spec, i))
    for i in range(2, half + 1):
        for j in range(2, ceil_half + 1):
            moves.append(center_three_cycle(spec, i, j))
    return moves
