'''Decomposition of cube states into independent piece families.

A sticker state can be read as a reassembly of physical pieces: corner
cubies, edge cubies, and centre facelets. Pieces fall into families that
never mix under slab moves:

  * 8 corner cubies (three stickers each),
  * on odd cubes, 12 single edge cubies in the central slab (two stickers),
  * for each slab depth i in 2..n//2, 24 coupled edge wings (one sticker),
  * for each depth i, 24 oblique centre facelets on the diagonals,
  * for each label (i, j) with i != j, 24 off-diagonal centre facelets,
  * on odd cubes, 6 immobile face centres.

build_atlas() works the family partition out from the move engine and
cross-checks it against orbit closure under the legal slab moves.
decompose() cuts a state into a ConfigTuple: one permutation per family
plus orientation vectors for corners, single edges and wings. compose()
reassembles the sticker state from a tuple.

Orientation conventions. Corners: the reference sticker of a corner is
its U or D facelet, and the other two positions follow clockwise when
the corner is viewed from outside; the twist of a slot counts how many
clockwise steps the occupant's reference colour sits away from the
slot's reference position. Single edges: one facelet of each edge slot
is marked, chosen (by a small exhaustive search over the 3x3 cube) so
that every outer face turn flips all four edges it moves; the flip bit
says whether the occupant's marked colour avoids the marked position.
Coupled wings: the 48 wing positions of a depth split into two classes
that no slab move ever exchanges; the orientation bit of a slot says
whether the occupant's class-leading sticker sits on the wrong class.
Sticker colours cannot distinguish a wing from its mirror twin, so
decompose() resolves each twin pair canonically: bits are zeroed where
possible and ties send the lower home to the lower slot. Centre facelets
of one colour are interchangeable as well, so decompose() assigns them
in sorted order and then, if needed, swaps one pair in the first colour
class to land the permutation sign demanded by the first law; states
that admit a legal tuple therefore receive one.
'''

import functools
from dataclasses import dataclass

from .cube_model import (
    COLORS,
    FACE_COLOR,
    FACES,
    CubeSpec,
    CubeState,
    Move,
    legal_slab_moves,
    solved_state,
    sticker_permutation,
    sticker_position,
)


class NotAConfiguration(ValueError):
    '''The sticker state is not any reassembly of the cube's pieces.'''

    def __init__(self, message, family=None, slot=None):
        super().__init__(message)
        self.family = family
        self.slot = slot


class ShapeMismatch(ValueError):
    '''A ConfigTuple does not fit the piece families of the given cube.'''


def permutation_sign(perm):
    '''Sign (+1 or -1) of a permutation given as an image sequence.'''
    perm = tuple(perm)
    seen = sorted(perm)
    if seen != list(range(len(perm))):
        raise ValueError('not a permutation: %r' % (perm,))
    sign = 1
    visited = [False] * len(perm)
    for start in range(len(perm)):
        if visited[start]:
            continue
        length = 0
        node = start
        while not visited[node]:
            visited[node] = True
            node = perm[node]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _cell_and_face(spec, index):
    cell, normal = sticker_position(spec, index)
    return cell, _FACE_OF_NORMAL[normal]


_FACE_OF_NORMAL = {
    (0, 1, 0): 'U',
    (0, -1, 0): 'D',
    (0, 0, 1): 'F',
    (0, 0, -1): 'B',
    (1, 0, 0): 'R',
    (-1, 0, 0): 'L',
}


def _face_grid(spec, index):
    face = FACES[index // (spec.n * spec.n)]
    rem = index % (spec.n * spec.n)
    return face, rem // spec.n, rem % spec.n


@functools.lru_cache(maxsize=None)
def _edge_marking():
    '''Choose a marked face for each edge type of the 3x3 cube.

    The marking is the bookkeeping behind edge flips: an edge move of a
    state is counted as a flip exactly when the sticker from the source
    slot's marked face lands on the destination slot's unmarked face.
    The choice below is found by exhaustive search over all 2**12
    assignments, keeping those for which every outer face quarter turn
    flips all four edges it moves, and taking the lexicographically
    first solution in home order. The same face-pair marking is reused
    for the central-slab edges of every odd cube, where it keeps the
    same property because slabs of equal depth move alike.
    '''
    spec = CubeSpec(3)
    cells = {}
    for index in range(spec.sticker_count):
        cell, face = _cell_and_face(spec, index)
        extremes = sum(1 for axis in range(3) if cell[axis] in (0, 2))
        if extremes == 2:
            cells.setdefault(cell, []).append((index, face))
    edges = []
    for cell in sorted(cells):
        pair = sorted(cells[cell])
        edges.append((pair[0][0], pair[0][1], pair[1][0], pair[1][1]))
    edges.sort()
    slot_of_position = {}
    for slot, (i0, f0, i1, f1) in enumerate(edges):
        slot_of_position[i0] = (slot, 0)
        slot_of_position[i1] = (slot, 1)
    transitions = []
    for face in FACES:
        perm = sticker_permutation(spec, Move(face, 1, 1))
        for slot, (i0, f0, i1, f1) in enumerate(edges):
            if perm[i0] == i0:
                continue
            dst0 = slot_of_position[perm[i0]]
            dst1 = slot_of_position[perm[i1]]
            if dst0[0] != dst1[0]:
                raise AssertionError('edge torn apart by a face turn')
            transitions.append((slot, dst0[0], dst0[1], dst1[1]))
    solutions = []
    for bits in range(1 << len(edges)):
        marking = [(bits >> slot) & 1 for slot in range(len(edges))]
        ok = True
        for src, dst, side0, side1 in transitions:
            landing = side0 if marking[src] == 0 else side1
            if landing == marking[dst]:
                ok = False
                break
        if ok:
            solutions.append(tuple(marking))
    if not solutions:
        raise AssertionError('no flip marking exists')
    chosen = min(solutions)
    marks = {}
    for slot, (i0, f0, i1, f1) in enumerate(edges):
        marked_face = f0 if chosen[slot] == 0 else f1
        marks[frozenset((f0, f1))] = marked_face
    return marks


@dataclass(frozen=True)
class CornerSlot:
    positions: tuple
    colors: tuple


@dataclass(frozen=True)
class SingleEdgeSlot:
    marked_position: int
    other_position: int
    marked_color: str
    other_color: str


@dataclass(frozen=True)
class CoupledSlot:
    lead_position: int
    trail_position: int
    lead_color: str
    trail_color: str


@dataclass(frozen=True)
class CenterSlot:
    position: int
    color: str


class OrbitAtlas:
    '''Catalogue of piece families and their slots for one cube size.'''

    def __init__(self, spec, corners, single_edges, coupled, center_corners,
                 center_edges, fixed_centers):
        self.spec = spec
        self.corners = corners
        self.single_edges = single_edges
        self.coupled = coupled
        self.center_corners = center_corners
        self.center_edges = center_edges
        self.fixed_centers = fixed_centers
        self.coupled_orbit_indices = tuple(sorted(coupled))
        self.center_corner_indices = tuple(sorted(center_corners))
        self.center_edge_labels = tuple(sorted(center_edges))
        self.center_classes = {}
        for key, slots in self._center_items():
            classes = {}
            for slot_id, slot in enumerate(slots):
                classes.setdefault(slot.color, []).append(slot_id)
            self.center_classes[key] = {
                color: tuple(ids) for color, ids in classes.items()
            }
        self.position_owner = {}
        for slot_id, corner in enumerate(corners):
            for role, pos in enumerate(corner.positions):
                self.position_owner[pos] = ('corner', None, slot_id, role)
        if single_edges is not None:
            for slot_id, edge in enumerate(single_edges):
                self.position_owner[edge.marked_position] = (
                    'single', None, slot_id, 'marked')
                self.position_owner[edge.other_position] = (
                    'single', None, slot_id, 'other')
        for i, slots in coupled.items():
            for slot_id, slot in enumerate(slots):
                self.position_owner[slot.lead_position] = (
                    'coupled', i, slot_id, 'lead')
                self.position_owner[slot.trail_position] = (
                    'coupled', i, slot_id, 'trail')
        for key, slots in self._center_items():
            family = 'center_corner' if isinstance(key, int) else 'center_edge'
            for slot_id, slot in enumerate(slots):
                self.position_owner[slot.position] = (
                    family, key, slot_id, None)
        if fixed_centers is not None:
            for pos, color in fixed_centers:
                self.position_owner[pos] = ('fixed_center', None, None, None)

    def _center_items(self):
        items = [(i, self.center_corners[i])
                 for i in sorted(self.center_corners)]
        items += [(label, self.center_edges[label])
                  for label in sorted(self.center_edges)]
        return items

    def slot_action(self, perm, family, key=None):
        '''Slot permutation induced by a sticker permutation.

        Returns images indexed by slot: the piece in slot a moves to
        slot action[a]. The sticker permutation must preserve the
        family, which holds for every legal non-central slab move.
        '''
        if family == 'corner':
            anchors = [slot.positions[0] for slot in self.corners]
        elif family == 'single':
            anchors = [slot.marked_position for slot in self.single_edges]
        elif family == 'coupled':
            anchors = [slot.lead_position for slot in self.coupled[key]]
        elif family == 'center_corner':
            anchors = [slot.position for slot in self.center_corners[key]]
        elif family == 'center_edge':
            anchors = [slot.position for slot in self.center_edges[key]]
        else:
            raise ValueError('unknown family %r' % (family,))
        images = []
        for anchor in anchors:
            owner = self.position_owner[perm[anchor]]
            if owner[0] != family or owner[1] != key:
                raise ValueError('permutation leaves family %s' % family)
            images.append(owner[2])
        return tuple(images)


_ATLAS_CACHE = {}


def build_atlas(spec):
    '''Build (and cache) the family catalogue for one cube size.'''
    atlas = _ATLAS_CACHE.get(spec.n)
    if atlas is None:
        atlas = _build_atlas(spec)
        _ATLAS_CACHE[spec.n] = atlas
    return atlas


def _orbit_components(spec):
    '''Partition sticker positions into orbits of the legal slab moves.'''
    parent = list(range(spec.sticker_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for move in legal_slab_moves(spec):
        perm = sticker_permutation(spec, move)
        for src, dst in enumerate(perm):
            union(src, dst)
    components = {}
    for pos in range(spec.sticker_count):
        components.setdefault(find(pos), []).append(pos)
    return list(components.values())


def _build_atlas(spec):
    n = spec.n
    solved = solved_state(spec)
    half = n // 2
    central = (n - 1) // 2 if n % 2 == 1 else None

    cells = {}
    for index in range(spec.sticker_count):
        cell, face = _cell_and_face(spec, index)
        cells.setdefault(cell, []).append((index, face))

    corner_raw = []
    single_raw = []
    coupled_raw = {}
    center_raw = []
    fixed_raw = []
    for cell, stickers in cells.items():
        extremes = [axis for axis in range(3) if cell[axis] in (0, n - 1)]
        if len(extremes) == 3:
            corner_raw.append((cell, stickers))
        elif len(extremes) == 2:
            free_axis = ({0, 1, 2} - set(extremes)).pop()
            t = cell[free_axis]
            if central is not None and t == central:
                single_raw.append((cell, stickers))
            else:
                depth = min(t + 1, n - t)
                coupled_raw.setdefault(depth, []).append((cell, stickers))
        elif len(extremes) == 1:
            (index, face), = stickers
            _, row, col = _face_grid(spec, index)
            if central is not None and row == central and col == central:
                fixed_raw.append((index, face))
            else:
                center_raw.append((index, face, row, col))
        else:
            raise AssertionError('sticker on no face')

    corners = []
    for cell, stickers in corner_raw:
        primary = None
        others = []
        for index, face in stickers:
            if face in ('U', 'D'):
                primary = (index, face)
            else:
                others.append((index, face))
        if primary is None or len(others) != 2:
            raise AssertionError('corner without a U/D facelet')
        n0 = _FACE_NORMALS[primary[1]]
        na = _FACE_NORMALS[others[0][1]]
        nb = _FACE_NORMALS[others[1][1]]
        if _det3(n0, na, nb) == -1:
            ordered = (primary[0], others[0][0], others[1][0])
        else:
            ordered = (primary[0], others[1][0], others[0][0])
        corners.append(CornerSlot(
            positions=ordered,
            colors=tuple(solved.stickers[p] for p in ordered)))
    corners.sort(key=lambda slot: slot.positions[0])
    corners = tuple(corners)

    single_edges = None
    if central is not None:
        marks = _edge_marking()
        built = []
        for cell, stickers in single_raw:
            pair = {face: index for index, face in stickers}
            marked_face = marks[frozenset(pair)]
            other_face = next(f for f in pair if f != marked_face)
            built.append(SingleEdgeSlot(
                marked_position=pair[marked_face],
                other_position=pair[other_face],
                marked_color=FACE_COLOR[marked_face],
                other_color=FACE_COLOR[other_face]))
        built.sort(key=lambda slot: slot.marked_position)
        single_edges = tuple(built)

    components = _orbit_components(spec)
    component_of = {}
    for comp_id, members in enumerate(components):
        for pos in members:
            component_of[pos] = comp_id

    coupled = {}
    for depth, raw in coupled_raw.items():
        positions = sorted(p for _, stickers in raw for p, _ in stickers)
        comp_ids = {component_of[p] for p in positions}
        if len(comp_ids) != 2:
            raise AssertionError(
                'wing positions at depth %d split into %d orbit classes'
                % (depth, len(comp_ids)))
        sizes = {cid: len(components[cid]) for cid in comp_ids}
        if set(sizes.values()) != {24}:
            raise AssertionError('wing orbit classes are not 24+24')
        lead_comp = component_of[min(positions)]
        built = []
        for cell, stickers in raw:
            (ia, fa), (ib, fb) = stickers
            if component_of[ia] == lead_comp and component_of[ib] != lead_comp:
                lead, trail = ia, ib
            elif component_of[ib] == lead_comp and component_of[ia] != lead_comp:
                lead, trail = ib, ia
            else:
                raise AssertionError('wing with both stickers in one class')
            built.append(CoupledSlot(
                lead_position=lead,
                trail_position=trail,
                lead_color=solved.stickers[lead],
                trail_color=solved.stickers[trail]))
        built.sort(key=lambda slot: slot.lead_position)
        by_pair = {}
        for slot in built:
            key = frozenset((slot.lead_color, slot.trail_color))
            by_pair.setdefault(key, []).append(slot)
        for key, twins in by_pair.items():
            if (len(twins) != 2
                    or twins[0].lead_color == twins[1].lead_color):
                raise AssertionError(
                    'wing twins of %r are not mirror images' % sorted(key))
        coupled[depth] = tuple(built)

    center_components = {}
    for index, face, row, col in center_raw:
        center_components.setdefault(component_of[index], []).append(
            (index, face, row, col))
    center_corners = {}
    center_edges = {}
    for members in center_components.values():
        if len(members) != 24:
            raise AssertionError('centre orbit of size %d' % len(members))
        front = [(row, col) for _, face, row, col in members if face == 'F']
        if len(front) != 4:
            raise AssertionError('centre orbit without 4 front members')
        in_quadrant = [
            (row, col) for row, col in front
            if row + 1 <= n // 2 and col + 1 <= (n + 1) // 2
        ]
        if len(in_quadrant) != 1:
            raise AssertionError('centre orbit label is ambiguous')
        row, col = in_quadrant[0]
        slots = tuple(sorted(
            (CenterSlot(position=index, color=FACE_COLOR[face])
             for index, face, _, _ in members),
            key=lambda slot: slot.position))
        if row == col:
            if row + 1 in center_corners:
                raise AssertionError('duplicate diagonal centre label')
            center_corners[row + 1] = slots
        else:
            label = (row + 1, col + 1)
            if label in center_edges:
                raise AssertionError('duplicate centre label %r' % (label,))
            center_edges[label] = slots

    expected_cc = set(range(2, half + 1))
    if set(center_corners) != expected_cc:
        raise AssertionError('diagonal centre labels %r, expected %r'
                             % (sorted(center_corners), sorted(expected_cc)))
    expected_ce = {
        (i, j)
        for i in range(2, half + 1)
        for j in range(2, (n + 1) // 2 + 1)
        if i != j
    }
    if set(center_edges) != expected_ce:
        raise AssertionError('off-diagonal centre labels %r, expected %r'
                             % (sorted(center_edges), sorted(expected_ce)))
    if set(coupled) != expected_cc:
        raise AssertionError('wing depths %r, expected %r'
                             % (sorted(coupled), sorted(expected_cc)))

    fixed_centers = None
    if central is not None:
        fixed_raw.sort()
        fixed_centers = tuple(
            (index, FACE_COLOR[face]) for index, face in fixed_raw)
        for index, _ in fixed_centers:
            if len(components[component_of[index]]) != 1:
                raise AssertionError('face centre is not immobile')

    atlas = OrbitAtlas(spec, corners, single_edges, coupled,
                       center_corners, center_edges, fixed_centers)

    total = 24
    if single_edges is not None:
        total += 24
    total += 48 * len(coupled) + 24 * (len(center_corners) + len(center_edges))
    if fixed_centers is not None:
        total += 6
    if total != spec.sticker_count or len(atlas.position_owner) != total:
        raise AssertionError('family sizes do not cover the cube')
    family_sets = {}
    for pos, owner in atlas.position_owner.items():
        family_sets.setdefault((owner[0], owner[1]), set()).add(pos)
    for members in components:
        keys = {
            (atlas.position_owner[pos][0], atlas.position_owner[pos][1])
            for pos in members
        }
        if len(keys) != 1:
            raise AssertionError('a move orbit crosses family boundaries')
    for key, slots in atlas._center_items():
        classes = atlas.center_classes[key]
        if sorted(classes) != sorted(COLORS) or any(
                len(ids) != 4 for ids in classes.values()):
            raise AssertionError('centre orbit colours are not 6 x 4')
    return atlas


_FACE_NORMALS = {
    'U': (0, 1, 0),
    'D': (0, -1, 0),
    'F': (0, 0, 1),
    'B': (0, 0, -1),
    'R': (1, 0, 0),
    'L': (-1, 0, 0),
}


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


@dataclass
class ConfigTuple:
    '''Per-family permutations and orientation vectors of one state.

    Permutations map home slots to current slots: perm[a] = b says the
    piece whose home is slot a sits in slot b. Orientation vectors are
    indexed by current slot. Wing and centre families are keyed by slab
    depth, off-diagonal centre families by their (row, col) depth label.
    Single-edge fields are None on even cubes.
    '''

    n: int
    corner_perm: tuple
    corner_twists: tuple
    single_edge_perm: object
    single_edge_flips: object
    coupled_perms: dict
    coupled_orientations: dict
    center_corner_perms: dict
    center_edge_perms: dict

    def is_identity(self):
        if (self.corner_perm != tuple(range(8))
                or any(self.corner_twists)):
            return False
        if self.single_edge_perm is not None:
            if (self.single_edge_perm != tuple(range(12))
                    or any(self.single_edge_flips)):
                return False
        ident24 = tuple(range(24))
        for perm in self.coupled_perms.values():
            if perm != ident24:
                return False
        for bits in self.coupled_orientations.values():
            if any(bits):
                return False
        for perm in self.center_corner_perms.values():
            if perm != ident24:
                return False
        for perm in self.center_edge_perms.values():
            if perm != ident24:
                return False
        return True

    def to_json_dict(self):
        return {
            'n': self.n,
            'corner_perm': list(self.corner_perm),
            'corner_twists': list(self.corner_twists),
            'single_edge_perm': (
                None if self.single_edge_perm is None
                else list(self.single_edge_perm)),
            'single_edge_flips': (
                None if self.single_edge_flips is None
                else list(self.single_edge_flips)),
            'coupled_perms': {
                str(i): list(perm)
                for i, perm in sorted(self.coupled_perms.items())},
            'coupled_orientations': {
                str(i): list(bits)
                for i, bits in sorted(self.coupled_orientations.items())},
            'center_corner_perms': {
                str(i): list(perm)
                for i, perm in sorted(self.center_corner_perms.items())},
            'center_edge_perms': {
                '%d,%d' % label: list(perm)
                for label, perm in sorted(self.center_edge_perms.items())},
        }

    @classmethod
    def from_json_dict(cls, data):
        def as_tuple(value):
            return None if value is None else tuple(int(v) for v in value)

        return cls(
            n=int(data['n']),
            corner_perm=as_tuple(data['corner_perm']),
            corner_twists=as_tuple(data['corner_twists']),
            single_edge_perm=as_tuple(data['single_edge_perm']),
            single_edge_flips=as_tuple(data['single_edge_flips']),
            coupled_perms={
                int(i): as_tuple(perm)
                for i, perm in data['coupled_perms'].items()},
            coupled_orientations={
                int(i): as_tuple(bits)
                for i, bits in data['coupled_orientations'].items()},
            center_corner_perms={
                int(i): as_tuple(perm)
                for i, perm in data['center_corner_perms'].items()},
            center_edge_perms={
                tuple(int(part) for part in label.split(',')): as_tuple(perm)
                for label, perm in data['center_edge_perms'].items()},
        )


def identity_tuple(spec):
    '''ConfigTuple of the solved state.'''
    atlas = build_atlas(spec)
    ident24 = tuple(range(24))
    odd = spec.n % 2 == 1
    return ConfigTuple(
        n=spec.n,
        corner_perm=tuple(range(8)),
        corner_twists=(0,) * 8,
        single_edge_perm=tuple(range(12)) if odd else None,
        single_edge_flips=(0,) * 12 if odd else None,
        coupled_perms={i: ident24 for i in atlas.coupled_orbit_indices},
        coupled_orientations={
            i: (0,) * 24 for i in atlas.coupled_orbit_indices},
        center_corner_perms={
            i: ident24 for i in atlas.center_corner_indices},
        center_edge_perms={
            label: ident24 for label in atlas.center_edge_labels},
    )


def _check_permutation(perm, size, family):
    if not isinstance(perm, tuple) or len(perm) != size:
        raise ShapeMismatch('%s permutation must have length %d'
                            % (family, size))
    if sorted(perm) != list(range(size)):
        raise ShapeMismatch('%s images are not a permutation' % family)


def validate_shape(config, atlas):
    '''Raise ShapeMismatch unless the tuple fits the atlas exactly.'''
    if not isinstance(config, ConfigTuple):
        raise ShapeMismatch('expected a ConfigTuple')
    if config.n != atlas.spec.n:
        raise ShapeMismatch('tuple is for n=%s, atlas for n=%d'
                            % (config.n, atlas.spec.n))
    _check_permutation(config.corner_perm, 8, 'corner')
    if (not isinstance(config.corner_twists, tuple)
            or len(config.corner_twists) != 8
            or any(t not in (0, 1, 2) for t in config.corner_twists)):
        raise ShapeMismatch('corner twists must be 8 values in 0..2')
    odd = atlas.spec.n % 2 == 1
    if odd:
        _check_permutation(config.single_edge_perm, 12, 'single edge')
        if (not isinstance(config.single_edge_flips, tuple)
                or len(config.single_edge_flips) != 12
                or any(b not in (0, 1) for b in config.single_edge_flips)):
            raise ShapeMismatch('single edge flips must be 12 bits')
    else:
        if (config.single_edge_perm is not None
                or config.single_edge_flips is not None):
            raise ShapeMismatch('even cubes have no single edge family')
    expected = set(atlas.coupled_orbit_indices)
    if set(config.coupled_perms) != expected:
        raise ShapeMismatch('wing depths %r, expected %r'
                            % (sorted(config.coupled_perms),
                               sorted(expected)))
    if set(config.coupled_orientations) != expected:
        raise ShapeMismatch('wing orientation depths do not match')
    for i in expected:
        _check_permutation(config.coupled_perms[i], 24, 'wing depth %d' % i)
        bits = config.coupled_orientations[i]
        if (not isinstance(bits, tuple) or len(bits) != 24
                or any(b not in (0, 1) for b in bits)):
            raise ShapeMismatch('wing orientations must be 24 bits')
    if set(config.center_corner_perms) != set(atlas.center_corner_indices):
        raise ShapeMismatch('diagonal centre depths do not match the cube')
    for i in atlas.center_corner_indices:
        _check_permutation(config.center_corner_perms[i], 24,
                           'diagonal centre depth %d' % i)
    if set(config.center_edge_perms) != set(atlas.center_edge_labels):
        raise ShapeMismatch('off-diagonal centre labels do not match')
    for label in atlas.center_edge_labels:
        _check_permutation(config.center_edge_perms[label], 24,
                           'centre label %r' % (label,))


def decompose(state, atlas=None):
    '''Cut a sticker state into its canonical ConfigTuple.

    Raises NotAConfiguration when the stickers cannot be read as any
    reassembly of the cube's pieces (wrong colour counts, torn cubies,
    a displaced immobile centre, and so on). Where several tuples paint
    the same stickers, the canonical one is returned: wing orientation
    bits are zeroed when possible, twin collisions send the lower home
    to the lower slot, and centre assignments are sorted then sign-fixed
    by one swap inside the first colour class.
    '''
    spec = state.spec
    if atlas is None:
        atlas = build_atlas(spec)
    if atlas.spec.n != spec.n:
        raise ShapeMismatch('atlas is for n=%d, state for n=%d'
                            % (atlas.spec.n, spec.n))
    counts = state.color_counts()
    share = spec.sticker_count // 6
    for color in COLORS:
        if counts.get(color, 0) != share:
            raise NotAConfiguration(
                'colour %s appears %d times, expected %d'
                % (color, counts.get(color, 0), share))

    if atlas.fixed_centers is not None:
        for position, color in atlas.fixed_centers:
            if state.stickers[position] != color:
                raise NotAConfiguration(
                    'immobile centre at position %d shows %s, expected %s'
                    % (position, state.stickers[position], color),
                    family='fixed_center')

    corner_home = {}
    for home, slot in enumerate(atlas.corners):
        corner_home[frozenset(slot.colors)] = home
    corner_perm = [None] * 8
    corner_twists = [0] * 8
    for current, slot in enumerate(atlas.corners):
        shown = tuple(state.stickers[p] for p in slot.positions)
        home = corner_home.get(frozenset(shown))
        if home is None:
            raise NotAConfiguration(
                'corner slot %d shows %r, not a corner piece'
                % (current, shown), family='corner', slot=current)
        if corner_perm[home] is not None:
            raise NotAConfiguration(
                'corner piece %d appears twice' % home,
                family='corner', slot=current)
        colors = atlas.corners[home].colors
        twist = None
        for t in range(3):
            if all(shown[(k + t) % 3] == colors[k] for k in range(3)):
                twist = t
                break
        if twist is None:
            raise NotAConfiguration(
                'corner slot %d holds a mirrored piece' % current,
                family='corner', slot=current)
        corner_perm[home] = current
        corner_twists[current] = twist

    single_edge_perm = None
    single_edge_flips = None
    if atlas.single_edges is not None:
        single_home = {}
        for home, slot in enumerate(atlas.single_edges):
            single_home[frozenset((slot.marked_color, slot.other_color))] = home
        single_edge_perm = [None] * 12
        single_edge_flips = [0] * 12
        for current, slot in enumerate(atlas.single_edges):
            shown = (state.stickers[slot.marked_position],
                     state.stickers[slot.other_position])
            home = single_home.get(frozenset(shown))
            if home is None or shown[0] == shown[1]:
                raise NotAConfiguration(
                    'edge slot %d shows %r, not an edge piece'
                    % (current, shown), family='single', slot=current)
            if single_edge_perm[home] is not None:
                raise NotAConfiguration(
                    'edge piece %d appears twice' % home,
                    family='single', slot=current)
            single_edge_perm[home] = current
            marked = atlas.single_edges[home].marked_color
            single_edge_flips[current] = 0 if shown[0] == marked else 1

    coupled_perms = {}
    coupled_orientations = {}
    for i in atlas.coupled_orbit_indices:
        slots = atlas.coupled[i]
        home_by_pair = {}
        for home, slot in enumerate(slots):
            key = frozenset((slot.lead_color, slot.trail_color))
            home_by_pair.setdefault(key, []).append(home)
        shown_by_pair = {}
        for current, slot in enumerate(slots):
            shown = (state.stickers[slot.lead_position],
                     state.stickers[slot.trail_position])
            if shown[0] == shown[1]:
                raise NotAConfiguration(
                    'wing slot %d at depth %d shows %r twice'
                    % (current, i, shown[0]), family='coupled', slot=current)
            key = frozenset(shown)
            if key not in home_by_pair:
                raise NotAConfiguration(
                    'wing slot %d at depth %d shows %r, not a wing piece'
                    % (current, i, shown), family='coupled', slot=current)
            shown_by_pair.setdefault(key, []).append(current)
        perm = [None] * 24
        bits = [0] * 24
        for key, homes in home_by_pair.items():
            currents = shown_by_pair.get(key, [])
            if len(currents) != 2:
                raise NotAConfiguration(
                    'wing pair %r appears %d times at depth %d, expected 2'
                    % (sorted(key), len(currents), i),
                    family='coupled', slot=currents[0] if currents else None)
            lead_colors = {slots[h].lead_color: h for h in homes}
            straight = {
                c: state.stickers[slots[c].lead_position] for c in currents
            }
            if set(straight.values()) == set(lead_colors):
                for current, color in straight.items():
                    perm[lead_colors[color]] = current
            else:
                # Both slots show the same leading colour: one occupant
                # must sit with its leading sticker on the trailing
                # class. Send the lower home to the lower slot.
                for home, current in zip(sorted(homes), sorted(currents)):
                    perm[home] = current
                    if slots[home].lead_color != straight[current]:
                        bits[current] = 1
        coupled_perms[i] = tuple(perm)
        coupled_orientations[i] = tuple(bits)

    corner_sign = permutation_sign(corner_perm)

    def wing_sign(depth):
        if depth in coupled_perms:
            return permutation_sign(coupled_perms[depth])
        return 1

    center_corner_perms = {}
    for i in atlas.center_corner_indices:
        center_corner_perms[i] = _assign_centers(
            state, atlas, i, atlas.center_corners[i], corner_sign,
            'diagonal centre depth %d' % i)
    center_edge_perms = {}
    for label in atlas.center_edge_labels:
        i, j = label
        required = corner_sign * wing_sign(i) * wing_sign(j)
        center_edge_perms[label] = _assign_centers(
            state, atlas, label, atlas.center_edges[label], required,
            'centre label %r' % (label,))

    return ConfigTuple(
        n=spec.n,
        corner_perm=tuple(corner_perm),
        corner_twists=tuple(corner_twists),
        single_edge_perm=(
            None if single_edge_perm is None else tuple(single_edge_perm)),
        single_edge_flips=(
            None if single_edge_flips is None else tuple(single_edge_flips)),
        coupled_perms=coupled_perms,
        coupled_orientations=coupled_orientations,
        center_corner_perms=center_corner_perms,
        center_edge_perms=center_edge_perms,
    )


def _assign_centers(state, atlas, key, slots, required_sign, label):
    classes = atlas.center_classes[key]
    current_by_color = {}
    for current, slot in enumerate(slots):
        current_by_color.setdefault(
            state.stickers[slot.position], []).append(current)
    perm = [None] * 24
    for color in sorted(classes):
        homes = classes[color]
        currents = current_by_color.get(color, [])
        if len(currents) != len(homes):
            raise NotAConfiguration(
                '%s has %d stickers of colour %s, expected %d'
                % (label, len(currents), color, len(homes)),
                family='center', slot=currents[0] if currents else None)
        for home, current in zip(homes, sorted(currents)):
            perm[home] = current
    if permutation_sign(perm) != required_sign:
        first_color = sorted(classes)[0]
        a, b = classes[first_color][0], classes[first_color][1]
        perm[a], perm[b] = perm[b], perm[a]
    return tuple(perm)


def compose(config, atlas=None):
    '''Reassemble the sticker state described by a ConfigTuple.'''
    if atlas is None:
        if not isinstance(config, ConfigTuple):
            raise ShapeMismatch('expected a ConfigTuple')
        atlas = build_atlas(CubeSpec(config.n))
    validate_shape(config, atlas)
    spec = atlas.spec
    stickers = [None] * spec.sticker_count

    if atlas.fixed_centers is not None:
        for position, color in atlas.fixed_centers:
            stickers[position] = color

    for home, slot in enumerate(atlas.corners):
        dest = atlas.corners[config.corner_perm[home]]
        twist = config.corner_twists[config.corner_perm[home]]
        for k in range(3):
            stickers[dest.positions[(k + twist) % 3]] = slot.colors[k]

    if atlas.single_edges is not None:
        for home, slot in enumerate(atlas.single_edges):
            dest = atlas.single_edges[config.single_edge_perm[home]]
            flip = config.single_edge_flips[config.single_edge_perm[home]]
            if flip == 0:
                stickers[dest.marked_position] = slot.marked_color
                stickers[dest.other_position] = slot.other_color
            else:
                stickers[dest.marked_position] = slot.other_color
                stickers[dest.other_position] = slot.marked_color

    for i in atlas.coupled_orbit_indices:
        slots = atlas.coupled[i]
        perm = config.coupled_perms[i]
        bits = config.coupled_orientations[i]
        for home, slot in enumerate(slots):
            dest = slots[perm[home]]
            if bits[perm[home]] == 0:
                stickers[dest.lead_position] = slot.lead_color
                stickers[dest.trail_position] = slot.trail_color
            else:
                stickers[dest.lead_position] = slot.trail_color
                stickers[dest.trail_position] = slot.lead_color

    for i in atlas.center_corner_indices:
        slots = atlas.center_corners[i]
        perm = config.center_corner_perms[i]
        for home, slot in enumerate(slots):
            stickers[slots[perm[home]].position] = slot.color
    for label in atlas.center_edge_labels:
        slots = atlas.center_edges[label]
        perm = config.center_edge_perms[label]
        for home, slot in enumerate(slots):
            stickers[slots[perm[home]].position] = slot.color

    if any(s is None for s in stickers):
        raise AssertionError('reassembly left a position unpainted')
    return CubeState(spec.n, ''.join(stickers))
