"""Command-line tests: exit codes, JSON schemas, piping."""

import io
import json
import subprocess
import sys

import pytest

from cubology.cli import main


def run(capsys, argv, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        monkeypatch.setattr('sys.stdin', io.StringIO(stdin_text))
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code if exc.code is not None else 0
    out, err = capsys.readouterr()
    return code, out, err


def test_scramble_emits_a_bare_state_document(capsys):
    code, out, _ = run(capsys, ['scramble', '--n', '3', '--seed', '5'])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {'n', 'stickers'}
    assert doc['n'] == 3
    assert len(doc['stickers']) == 54
    # same seed, same scramble
    _, again, _ = run(capsys, ['scramble', '--n', '3', '--seed', '5'])
    assert again == out


def test_scramble_without_seed_is_a_usage_error(capsys):
    code, _, err = run(capsys, ['scramble', '--n', '3'])
    assert code == 2


def test_validate_accepts_piped_state(capsys, monkeypatch):
    _, doc, _ = run(capsys, ['scramble', '--n', '4', '--seed', '8'])
    code, out, _ = run(capsys, ['validate', '--n', '4', '--state-file', '-'],
                       stdin_text=doc, monkeypatch=monkeypatch)
    assert code == 0
    assert 'valid: yes' in out


def test_validate_flags_unsolvable_states(capsys, monkeypatch):
    _, doc, _ = run(capsys, ['scramble', '--n', '2', '--seed', '1'])
    data = json.loads(doc)
    # rotate the three stickers of one corner in place: a twisted reassembly
    from cubology.cube_model import CubeSpec
    from cubology.decomposition import build_atlas
    a, b, c = build_atlas(CubeSpec(2)).corners[0].positions
    s = data['stickers']
    s[a], s[b], s[c] = s[c], s[a], s[b]
    code, out, _ = run(capsys, ['validate', '--n', '2', '--state-file', '-'],
                       stdin_text=json.dumps(data), monkeypatch=monkeypatch)
    assert code == 1
    assert 'valid: no' in out
    assert 'corner_twist_sum' in out


def test_validate_json_schema(capsys):
    code, out, _ = run(capsys, ['validate', '--n', '3', '--moves', 'R U',
                                '--json'])
    assert code == 0
    doc = json.loads(out)
    assert doc['schema'] == 'cubology/validate/v1'
    assert doc['valid'] is True
    assert [c['condition'] for c in doc['conditions']] == \
        ['parity_corners_edges', 'corner_twist_sum', 'edge_flip_sum']


def test_solve_from_seed_reports_verification(capsys):
    code, out, _ = run(capsys, ['solve', '--n', '2', '--seed', '9'])
    assert code == 0
    assert 'verified: solved' in out
    assert 'total' in out


def test_solve_json_trace(capsys):
    code, out, _ = run(capsys, ['solve', '--n', '3', '--seed', '2', '--json'])
    assert code == 0
    doc = json.loads(out)
    assert doc['schema'] == 'cubology/solve/v1'
    assert doc['verified'] is True
    names = [s['stage'] for s in doc['stages']]
    assert names[0] == 'sign_alignment'
    assert doc['total_length'] == sum(s['length'] for s in doc['stages'])


def test_solve_rejects_unsolvable_input_with_domain_error(capsys, monkeypatch):
    _, doc, _ = run(capsys, ['scramble', '--n', '2', '--seed', '1'])
    data = json.loads(doc)
    from cubology.cube_model import CubeSpec
    from cubology.decomposition import build_atlas
    a, b, c = build_atlas(CubeSpec(2)).corners[0].positions
    s = data['stickers']
    s[a], s[b], s[c] = s[c], s[a], s[b]
    code, _, err = run(capsys, ['solve', '--n', '2', '--state-file', '-'],
                       stdin_text=json.dumps(data), monkeypatch=monkeypatch)
    assert code == 1
    assert err.startswith('NotSolvable:')


def test_contradictory_inputs_are_usage_errors(capsys):
    code, _, err = run(capsys, ['validate', '--n', '3', '--moves', 'R',
                                '--seed', '4'])
    assert code == 2


def test_state_file_size_conflict_is_a_usage_error(capsys, monkeypatch):
    _, doc, _ = run(capsys, ['scramble', '--n', '3', '--seed', '5'])
    code, _, err = run(capsys, ['validate', '--n', '4', '--state-file', '-'],
                       stdin_text=doc, monkeypatch=monkeypatch)
    assert code == 2


def test_parse_errors_exit_one_with_the_error_name(capsys):
    code, _, err = run(capsys, ['validate', '--n', '3', '--moves', 'Q'])
    assert code == 1
    assert err.startswith('ParseError:')
    code, _, err = run(capsys, ['render', '--n', '3', '--moves', '5R'])
    assert code == 1
    assert err.startswith('IllegalDepth:')


def test_count_prints_exact_decimals(capsys):
    code, out, _ = run(capsys, ['count', '--n', '3', '--what', 'group'])
    assert code == 0
    assert out.strip() == '43252003274489856000'
    code, out, _ = run(capsys, ['count', '--n', '4', '--what', 'orbits'])
    assert out.strip() == str(3 * 2 ** 25)


def test_count_bound_carries_a_precision_note(capsys):
    code, out, _ = run(capsys, ['count', '--n', '2', '--what', 'bound'])
    assert code == 0
    assert out.startswith('7 ')
    assert 'digits' in out


def test_count_json_values_are_strings(capsys):
    code, out, _ = run(capsys, ['count', '--n', '5', '--what', 's_phys',
                                '--json'])
    doc = json.loads(out)
    assert doc['schema'] == 'cubology/count/v1'
    assert isinstance(doc['value'], str)
    assert int(doc['value']) > 0


def test_order_both_methods_match(capsys):
    code, out, _ = run(capsys, ['order', '--n', '2', '--method', 'both'])
    assert code == 0
    assert 'MATCH' in out
    assert '88179840' in out


def test_bound_human_sentence(capsys):
    code, out, _ = run(capsys, ['bound', '--n', '2'])
    assert code == 0
    assert 'no solver beats 7 moves' in out
    code, out, _ = run(capsys, ['bound', '--n', '2', '--tuned'])
    assert 'no solver beats 9 moves' in out


def test_verify_moves_all_pass(capsys):
    code, out, _ = run(capsys, ['verify-moves', '--n', '4'])
    assert code == 0
    assert 'FAIL' not in out
    assert 'corner_three_cycle' in out


def test_render_plain_and_ansi(capsys):
    code, out, _ = run(capsys, ['render', '--n', '2', '--moves', 'R'])
    assert code == 0
    assert '\x1b[' not in out
    assert len(out.splitlines()) == 8
    code, ansi_out, _ = run(capsys, ['render', '--n', '2', '--moves', 'R',
                                     '--ansi'])
    assert '\x1b[' in ansi_out


def test_decompose_shows_tuple_fields(capsys):
    code, out, _ = run(capsys, ['decompose', '--n', '2', '--moves', 'F'])
    assert code == 0
    assert 'corner_perm: [0, 1, 3, 5, 2, 4, 6, 7]' in out
    code, out, _ = run(capsys, ['decompose', '--n', '2', '--moves', 'F',
                                '--json'])
    doc = json.loads(out)
    assert doc['schema'] == 'cubology/decompose/v1'
    assert doc['corner_twists'] == [0, 0, 2, 1, 1, 2, 0, 0]


def test_unknown_subcommand_is_a_usage_error(capsys):
    code, _, err = run(capsys, ['simulate', '--n', '3'])
    assert code == 2


def test_real_process_pipe_round_trip():
    pipeline = (
        '%(py)s -m cubology.cli scramble --n 3 --seed 77 | '
        '%(py)s -m cubology.cli solve --n 3 --state-file -'
        % {'py': sys.executable})
    proc = subprocess.run(['sh', '-c', pipeline],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert 'verified: solved' in proc.stdout
