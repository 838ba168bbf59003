'''Command line front end.

One executable, `cubology`, with a subcommand per operation: scramble,
validate, solve, count, order, bound, verify-moves, render, decompose.
Output is plain text by default and versioned JSON under --json; counts
are serialized as decimal strings because several exceed what common
JSON readers keep exact.

State documents are JSON of the form {"n": N, "stickers": [letters in
face-major order]}. scramble emits exactly that document, so it pipes
into any subcommand that reads --state-file (use - for stdin). Exit
codes: 0 success (and verdicts that hold), 1 domain errors (reported as
"ErrorName: message" on stderr) and failed verdicts, 2 usage errors.
'''

import argparse
import json
import random
import sys

from .counting import (
    gods_number_lower_bound,
    group_order,
    orbit_count,
    s_conf_size,
    s_phys_size,
    tuned_lower_bound,
)
from .cube_model import (
    CubeSpec,
    CubeState,
    apply_sequence,
    format_move_sequence,
    legal_slab_moves,
    parse_move_sequence,
    render_net,
    solved_state,
)
from .cubology_law import check_validity
from .decomposition import build_atlas, decompose
from .group_oracle import generators, schreier_sims_order
from .move_library import all_named_moves, verify_cycle_structure
from .solver import solve


class _UsageError(Exception):
    pass


_ANSI_CODES = {'W': '97', 'O': '38;5;208', 'G': '32',
               'R': '31', 'B': '34', 'Y': '93'}


def _schema(command):
    return 'cubology/%s/v1' % command


def _emit(document):
    print(json.dumps(document, indent=2))


def _require_n(args):
    if args.n is None:
        raise _UsageError('--n is required here')
    return CubeSpec(args.n)


def _scramble_state(spec, seed, length):
    rng = random.Random(seed)
    alphabet = legal_slab_moves(spec, False, (1, 2, 3))
    if length is None:
        length = 30 * spec.n
    moves = [rng.choice(alphabet) for _ in range(length)]
    return apply_sequence(solved_state(spec), moves)


def _input_state(args):
    '''Resolve the state a subcommand works on from --state-file,
    --moves, or --seed, in that order of precedence.'''
    given = [name for name, value in (('--state-file', args.state_file),
                                      ('--moves', args.moves),
                                      ('--seed', args.seed))
             if value is not None]
    if len(given) > 1:
        raise _UsageError('give only one of %s' % ', '.join(given))
    if args.state_file is not None:
        if args.state_file == '-':
            document = json.load(sys.stdin)
        else:
            with open(args.state_file) as handle:
                document = json.load(handle)
        state = CubeState(document['n'], tuple(document['stickers']))
        if args.n is not None and args.n != state.n:
            raise _UsageError('--n %d contradicts the state file (n=%d)'
                              % (args.n, state.n))
        return state
    spec = _require_n(args)
    if args.moves is not None:
        sequence = parse_move_sequence(args.moves, spec)
        return apply_sequence(solved_state(spec), sequence)
    if args.seed is not None:
        return _scramble_state(spec, args.seed, None)
    raise _UsageError('give one of --state-file, --moves, --seed')


def _state_document(state):
    return {'n': state.n, 'stickers': list(state.stickers)}


def _cmd_scramble(args):
    spec = _require_n(args)
    if args.seed is None:
        raise _UsageError('scramble needs --seed for reproducibility')
    state = _scramble_state(spec, args.seed, args.length)
    _emit(_state_document(state))
    return 0


def _cmd_validate(args):
    state = _input_state(args)
    report = check_validity(decompose(state))
    if args.json:
        _emit({'schema': _schema('validate'), 'n': state.n,
               'valid': report.valid,
               'conditions': [{'condition': c.condition, 'ok': c.ok,
                               'detail': c.detail}
                              for c in report.conditions]})
    else:
        for c in report.conditions:
            line = '%-22s %s' % (c.condition, 'pass' if c.ok else 'FAIL')
            if not c.ok and c.detail:
                line += '  (%s)' % c.detail
            print(line)
        print('valid: %s' % ('yes' if report.valid else 'no'))
    return 0 if report.valid else 1


def _cmd_solve(args):
    state = _input_state(args)
    trace = solve(state)
    solved = apply_sequence(state, trace.total) == solved_state(state.spec)
    cumulative = 0
    if args.json:
        stages = []
        for name, sequence, config in trace.stages:
            cumulative += len(sequence)
            stages.append({'stage': name,
                           'moves': format_move_sequence(sequence),
                           'length': len(sequence),
                           'cumulative': cumulative,
                           'tuple_after': config.to_json_dict()})
        _emit({'schema': _schema('solve'), 'n': trace.n, 'stages': stages,
               'total': format_move_sequence(trace.total),
               'total_length': len(trace.total), 'verified': solved})
    else:
        for name, sequence, _config in trace.stages:
            cumulative += len(sequence)
            print('%-28s %5d %7d' % (name, len(sequence), cumulative))
        print('total %d moves: %s'
              % (len(trace.total), format_move_sequence(trace.total)))
        print('verified: %s' % ('solved' if solved else 'NOT SOLVED'))
    return 0 if solved else 1


def _cmd_count(args):
    spec = _require_n(args)
    exact = {'s_conf': s_conf_size, 'orbits': orbit_count,
             'group': group_order, 's_phys': s_phys_size}
    if args.what in exact:
        value = exact[args.what](spec.n)
        if args.json:
            _emit({'schema': _schema('count'), 'n': spec.n,
                   'what': args.what, 'value': str(value)})
        else:
            print(value)
        return 0
    if args.what == 'bound':
        result = gods_number_lower_bound(spec.n, args.precision)
    else:
        result = tuned_lower_bound(spec.n, args.precision)
    if args.json:
        _emit({'schema': _schema('count'), 'n': spec.n, 'what': args.what,
               'value': str(result.ceiling), 'bound': str(result.bound),
               'precision': result.precision,
               's_phys': str(result.s_phys),
               'basic_move_count': result.basic_move_count})
    else:
        print('%d (bound %s at %d digits)'
              % (result.ceiling, _format_bound(result.bound),
                 result.precision))
    return 0


def _format_bound(value):
    text = str(value)
    return text[:24] + '...' if len(text) > 27 else text


def _cmd_order(args):
    spec = _require_n(args)
    formula = oracle = None
    if args.method in ('formula', 'both'):
        formula = group_order(spec.n)
    if args.method in ('oracle', 'both'):
        oracle = schreier_sims_order(generators(spec))
    match = formula == oracle if args.method == 'both' else None
    if args.json:
        _emit({'schema': _schema('order'), 'n': spec.n,
               'method': args.method,
               'formula': None if formula is None else str(formula),
               'oracle': None if oracle is None else str(oracle),
               'match': match})
    else:
        if formula is not None:
            print('formula: %d' % formula)
        if oracle is not None:
            print('oracle:  %d' % oracle)
        if match is not None:
            print('MATCH' if match else 'MISMATCH')
    return 0 if match in (True, None) else 1


def _cmd_bound(args):
    spec = _require_n(args)
    if args.tuned:
        result = tuned_lower_bound(spec.n, args.precision)
        kind = 'tuned'
    else:
        result = gods_number_lower_bound(spec.n, args.precision)
        kind = 'plain'
    if args.json:
        _emit({'schema': _schema('bound'), 'n': spec.n, 'kind': kind,
               'ceiling': result.ceiling, 'bound': str(result.bound),
               'precision': result.precision,
               's_phys': str(result.s_phys),
               'basic_move_count': result.basic_move_count})
    else:
        print('n=%d: no solver beats %d moves in the worst case'
              % (spec.n, result.ceiling))
        print('%s bound %s with %d basic moves, %d digits'
              % (kind, _format_bound(result.bound),
                 result.basic_move_count, result.precision))
    return 0


def _cmd_verify_moves(args):
    spec = _require_n(args)
    rows = []
    for named in all_named_moves(spec):
        report = verify_cycle_structure(spec, named.sequence,
                                        named.expected_effect)
        rows.append((named, report.ok))
    if args.json:
        _emit({'schema': _schema('verify-moves'), 'n': spec.n,
               'moves': [{'name': named.name,
                          'descriptor': named.expected_effect.describe(),
                          'ok': ok}
                         for named, ok in rows],
               'all_ok': all(ok for _named, ok in rows)})
    else:
        for named, ok in rows:
            print('%-26s n=%d  %-40s %s'
                  % (named.name, spec.n, named.expected_effect.describe(),
                     'pass' if ok else 'FAIL'))
    return 0 if all(ok for _named, ok in rows) else 1


def _cmd_render(args):
    state = _input_state(args)
    text = render_net(state)
    if args.ansi:
        for letter, code in _ANSI_CODES.items():
            text = text.replace(letter, '\x1b[%sm%s\x1b[0m'
                                % (code, letter))
    if args.json:
        _emit({'schema': _schema('render'), 'n': state.n,
               'lines': render_net(state).splitlines()})
    else:
        print(text)
    return 0


def _cmd_decompose(args):
    state = _input_state(args)
    config = decompose(state)
    document = config.to_json_dict()
    if args.json:
        _emit({'schema': _schema('decompose'), **document})
    else:
        for key, value in document.items():
            print('%s: %s' % (key, json.dumps(value)))
    return 0


def _add_state_arguments(parser):
    parser.add_argument('--moves', metavar='SEQ',
                        help='apply this sequence to the solved cube')
    parser.add_argument('--state-file', metavar='PATH',
                        help='read a state document (- for stdin)')
    parser.add_argument('--seed', type=int, metavar='S',
                        help='scramble the solved cube with this seed')


def _build_parser():
    parser = argparse.ArgumentParser(
        prog='cubology',
        description='Exact cube group toolkit: simulate, validate, '
                    'solve, count.')
    commands = parser.add_subparsers(dest='command', required=True)

    def subcommand(name, handler, helptext):
        sub = commands.add_parser(name, help=helptext)
        sub.set_defaults(handler=handler)
        sub.add_argument('--n', type=int, help='cube size')
        sub.add_argument('--json', action='store_true',
                         help='versioned JSON output')
        return sub

    sub = subcommand('scramble', _cmd_scramble,
                     'emit a seeded random state document')
    sub.add_argument('--seed', type=int, metavar='S')
    sub.add_argument('--length', type=int, metavar='K',
                     help='scramble length (default 30n)')

    _add_state_arguments(subcommand('validate', _cmd_validate,
                                    'check the solvability law'))
    _add_state_arguments(subcommand('solve', _cmd_solve,
                                    'solve a state and print the trace'))

    sub = subcommand('count', _cmd_count, 'exact counts and bounds')
    sub.add_argument('--what', required=True,
                     choices=['s_conf', 'orbits', 'group', 's_phys',
                              'bound', 'tuned-bound'])
    sub.add_argument('--precision', type=int, default=50, metavar='D')

    sub = subcommand('order', _cmd_order,
                     'group order by formula, oracle, or both')
    sub.add_argument('--method', choices=['formula', 'oracle', 'both'],
                     default='both')

    sub = subcommand('bound', _cmd_bound,
                     'certified lower bound on worst-case solve length')
    sub.add_argument('--precision', type=int, default=50, metavar='D')
    sub.add_argument('--tuned', action='store_true',
                     help='use the reduced word count')

    subcommand('verify-moves', _cmd_verify_moves,
               'verify every named move against its contract')

    sub = subcommand('render', _cmd_render, 'print the sticker net')
    _add_state_arguments(sub)
    sub.add_argument('--ansi', action='store_true',
                     help='color the letters')

    _add_state_arguments(subcommand('decompose', _cmd_decompose,
                                    'print the configuration tuple'))
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as error:
        print('usage error: %s' % error, file=sys.stderr)
        return 2
    except ValueError as error:
        print('%s: %s' % (type(error).__name__, error), file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
