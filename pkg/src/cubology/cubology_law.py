'''Solvability law for reassembled cubes.

A reassembly of the cube's pieces is reachable by slab moves exactly
when its ConfigTuple passes a short list of arithmetic conditions:

  * parity_corners_edges: the corner permutation sign equals the single
    edge permutation sign (odd cubes) and every diagonal centre
    permutation sign. On the 2x2x2 cube no centres or single edges
    exist, so nothing ties the corner sign and the condition is absent.
  * center_edge_sign: each off-diagonal centre family labelled (i, j)
    must have sign equal to the product of the corner sign and the wing
    permutation signs at depths i and j; a depth pointing at the
    central slab of an odd cube contributes no factor.
  * corner_twist_sum: corner twists sum to 0 mod 3.
  * edge_flip_sum: single edge flips sum to 0 mod 2 (odd cubes).
  * coupled_orientation: every wing orientation bit is 0, since no slab
    move ever carries a wing sticker across to its twin's class.

check_validity() evaluates every applicable condition and reports each
verdict. The samplers draw uniformly from all reassemblies and from the
reachable ones respectively. orbit_class_count() recomputes the number
of law classes from first principles (rank of the generator sign
vectors over GF(2)) as an independent check on the closed formulas in
the counting module.
'''

import random
from dataclasses import dataclass

from .cube_model import CubeSpec, legal_slab_moves, sticker_permutation
from .decomposition import (
    ConfigTuple,
    ShapeMismatch,
    build_atlas,
    compose,
    decompose,
    permutation_sign,
    validate_shape,
)


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    conditions: tuple

    def failing(self):
        return tuple(c for c in self.conditions if not c.ok)

    def by_condition(self):
        return {c.condition: c for c in self.conditions}


def _wing_sign(config, depth):
    '''Sign contributed by the edge family at a slab depth.

    Depths that point at the central slab of an odd cube carry no wing
    family and contribute no factor.
    '''
    if depth in config.coupled_perms:
        return permutation_sign(config.coupled_perms[depth])
    return 1


def check_validity(config, atlas=None):
    '''Evaluate every applicable law condition on a ConfigTuple.'''
    if not isinstance(config, ConfigTuple):
        raise ShapeMismatch('expected a ConfigTuple')
    if atlas is None:
        atlas = build_atlas(CubeSpec(config.n))
    validate_shape(config, atlas)
    odd = config.n % 2 == 1
    corner_sign = permutation_sign(config.corner_perm)
    conditions = []

    tied = []
    if odd and config.single_edge_perm is not None:
        tied.append(('single edges', permutation_sign(config.single_edge_perm)))
    for i in sorted(config.center_corner_perms):
        tied.append(('diagonal centres %d' % i,
                     permutation_sign(config.center_corner_perms[i])))
    if tied:
        bad = [name for name, sign in tied if sign != corner_sign]
        conditions.append(ConditionVerdict(
            condition='parity_corners_edges',
            ok=not bad,
            detail=('all permutation signs match the corner sign %+d'
                    % corner_sign if not bad else
                    'signs differ from the corner sign %+d: %s'
                    % (corner_sign, ', '.join(bad)))))

    if config.center_edge_perms:
        bad = []
        for (i, j), perm in sorted(config.center_edge_perms.items()):
            required = (corner_sign * _wing_sign(config, i)
                        * _wing_sign(config, j))
            if permutation_sign(perm) != required:
                bad.append('(%d, %d)' % (i, j))
        conditions.append(ConditionVerdict(
            condition='center_edge_sign',
            ok=not bad,
            detail=('every off-diagonal centre sign matches its wing '
                    'sign product' if not bad else
                    'wrong sign at labels ' + ', '.join(bad))))

    twist_sum = sum(config.corner_twists) % 3
    conditions.append(ConditionVerdict(
        condition='corner_twist_sum',
        ok=twist_sum == 0,
        detail='corner twists sum to %d mod 3' % twist_sum))

    if odd:
        flip_sum = sum(config.single_edge_flips) % 2
        conditions.append(ConditionVerdict(
            condition='edge_flip_sum',
            ok=flip_sum == 0,
            detail='single edge flips sum to %d mod 2' % flip_sum))

    if config.coupled_orientations:
        bad = [str(i) for i, bits in sorted(config.coupled_orientations.items())
               if any(bits)]
        conditions.append(ConditionVerdict(
            condition='coupled_orientation',
            ok=not bad,
            detail=('no wing sits on its twin\'s sticker class' if not bad
                    else 'flipped wings at depths ' + ', '.join(bad))))

    return ValidityReport(
        valid=all(c.ok for c in conditions),
        conditions=tuple(conditions))


def is_solvable(state):
    '''Whether a sticker state is reachable from solved by slab moves.

    The state must be a reassembly of the cube's pieces; anything else
    raises NotAConfiguration.
    '''
    return check_validity(decompose(state)).valid


def random_configuration(spec, seed=None):
    '''Uniformly random reassembly of the cube's pieces.

    Draws every family permutation and orientation vector uniformly and
    reassembles. Each sticker state is painted by the same number of
    tuples, so the returned state is uniform over all reassemblies.
    '''
    rng = random.Random(seed)
    atlas = build_atlas(spec)
    odd = spec.n % 2 == 1
    config = ConfigTuple(
        n=spec.n,
        corner_perm=_random_perm(rng, 8),
        corner_twists=tuple(rng.randrange(3) for _ in range(8)),
        single_edge_perm=_random_perm(rng, 12) if odd else None,
        single_edge_flips=(
            tuple(rng.randrange(2) for _ in range(12)) if odd else None),
        coupled_perms={
            i: _random_perm(rng, 24) for i in atlas.coupled_orbit_indices},
        coupled_orientations={
            i: tuple(rng.randrange(2) for _ in range(24))
            for i in atlas.coupled_orbit_indices},
        center_corner_perms={
            i: _random_perm(rng, 24) for i in atlas.center_corner_indices},
        center_edge_perms={
            label: _random_perm(rng, 24)
            for label in atlas.center_edge_labels},
    )
    return compose(config, atlas)


def random_valid_configuration(spec, seed=None):
    '''Uniformly random reachable state.

    Samples every component freely, then repairs each constrained
    component in place: the last corner twist and single edge flip are
    set to cancel the rest, wing orientation bits are zeroed, and each
    permutation whose sign the law ties down is corrected by swapping
    the images of its first two home slots when needed. Each repair
    merges a constant number of free draws into one reachable state, so
    the result is uniform over the reachable states.
    '''
    rng = random.Random(seed)
    atlas = build_atlas(spec)
    odd = spec.n % 2 == 1

    corner_perm = _random_perm(rng, 8)
    corner_sign = permutation_sign(corner_perm)
    twists = [rng.randrange(3) for _ in range(7)]
    twists.append(-sum(twists) % 3)

    single_perm = None
    single_flips = None
    if odd:
        single_perm = _signed_perm(rng, 12, corner_sign)
        flips = [rng.randrange(2) for _ in range(11)]
        flips.append(sum(flips) % 2)
        single_flips = tuple(flips)

    coupled_perms = {
        i: _random_perm(rng, 24) for i in atlas.coupled_orbit_indices}
    coupled_orientations = {
        i: (0,) * 24 for i in atlas.coupled_orbit_indices}

    def wing_sign(depth):
        if depth in coupled_perms:
            return permutation_sign(coupled_perms[depth])
        return 1

    center_corner_perms = {
        i: _signed_perm(rng, 24, corner_sign)
        for i in atlas.center_corner_indices}
    center_edge_perms = {}
    for (i, j) in atlas.center_edge_labels:
        required = corner_sign * wing_sign(i) * wing_sign(j)
        center_edge_perms[(i, j)] = _signed_perm(rng, 24, required)

    config = ConfigTuple(
        n=spec.n,
        corner_perm=corner_perm,
        corner_twists=tuple(twists),
        single_edge_perm=single_perm,
        single_edge_flips=single_flips,
        coupled_perms=coupled_perms,
        coupled_orientations=coupled_orientations,
        center_corner_perms=center_corner_perms,
        center_edge_perms=center_edge_perms,
    )
    return compose(config, atlas)


def _random_perm(rng, size):
    images = list(range(size))
    rng.shuffle(images)
    return tuple(images)


def _signed_perm(rng, size, sign):
    images = list(_random_perm(rng, size))
    if permutation_sign(images) != sign:
        images[0], images[1] = images[1], images[0]
    return tuple(images)


def orbit_class_count(spec):
    '''Number of law classes among reassemblies, from first principles.

    Counts the joint values the move-invariant data can take: the
    corner twist sum mod 3, the single edge flip sum mod 2 (odd cubes),
    one bit per wing marking which sticker class it occupies, and the
    coset of the family sign vector modulo the span of the generator
    sign vectors over GF(2). The span is computed by running every
    legal slab move through the atlas and eliminating.
    '''
    atlas = build_atlas(spec)
    odd = spec.n % 2 == 1
    families = [('corner', None)]
    if odd:
        families.append(('single', None))
    for i in atlas.coupled_orbit_indices:
        families.append(('coupled', i))
    for i in atlas.center_corner_indices:
        families.append(('center_corner', i))
    for label in atlas.center_edge_labels:
        families.append(('center_edge', label))

    vectors = []
    for move in legal_slab_moves(spec):
        perm = sticker_permutation(spec, move)
        bits = 0
        for k, (family, key) in enumerate(families):
            action = atlas.slot_action(perm, family, key)
            if permutation_sign(action) < 0:
                bits |= 1 << k
        vectors.append(bits)

    basis = {}
    for vec in vectors:
        while vec:
            top = vec.bit_length() - 1
            if top in basis:
                vec ^= basis[top]
            else:
                basis[top] = vec
                break

    free_signs = len(families) - len(basis)
    wing_bits = 24 * len(atlas.coupled_orbit_indices)
    count = 3 * (2 ** (free_signs + wing_bits))
    if odd:
        count *= 2
    return count
