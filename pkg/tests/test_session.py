import pytest

from expmaps import builtin_session
from expmaps.errors import ParseError, ReservedName, UnknownVariable
from expmaps.fields import FieldSpec
from expmaps.polynomials import PolyRing, VarList
from expmaps.session import parse_expression, parse_session, render_session

Q = FieldSpec(0)


def test_parse_expression_examples():
    r = PolyRing(Q, VarList.of(("x", "z", "t")))
    x, z, t = r.var("x"), r.var("z"), r.var("t")
    assert parse_expression("x + x^2*z", r) == x + x ** 2 * z
    assert parse_expression("-3*t^3 + 2", r) == -(t ** 3).scale(Q.coeff(3)) + r.constant(Q.coeff(2))
    assert parse_expression("(x + z)^2", r) == x ** 2 + (x * z).scale(Q.coeff(2)) + z ** 2
    assert parse_expression("1/2*x", r) == x.scale(Q.coeff(1)) * r.constant(Q.coeff(1) / Q.coeff(2))


def test_parse_expression_rejects_unknown_name():
    r = PolyRing(Q, VarList.of(("x",)))
    with pytest.raises(UnknownVariable):
        parse_expression("x + w", r)


def test_parse_expression_reserves_u_outside_maps():
    r = PolyRing(Q, VarList.of(("x",)))
    with pytest.raises(ReservedName):
        parse_expression("x + U", r, allow_u=False)


def test_builtin_russell_session_matches_catalog(russell_entries):
    session = parse_session(builtin_session("russell"))
    entry = russell_entries[0]
    assert session.algebra == entry.algebra
    assert set(session.maps) == {"phi1", "phi2"}
    for name in ("phi1", "phi2"):
        assert session.maps[name].images == entry.maps[name].images
    assert session.weights["w1"] == entry.weights["w1"]
    assert session.weights["w2"] == entry.weights["w2"]


def test_builtin_nonexample_sessions():
    psi = parse_session(builtin_session("nonexample_psi"))
    assert not next(iter(psi.maps.values())).verify().ok
    sq = parse_session(builtin_session("nonexample_square"))
    assert not next(iter(sq.maps.values())).verify().ok


def test_round_trip(russell_entries):
    text = builtin_session("russell")
    session = parse_session(text)
    rendered = render_session(session)
    again = parse_session(rendered)
    assert again.algebra == session.algebra
    assert again.maps.keys() == session.maps.keys()
    for name in session.maps:
        assert again.maps[name].images == session.maps[name].images
    assert again.weights == session.weights
    assert render_session(again) == rendered


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_session("field char = 0\nbogus decl = 1\n")
    assert exc.value.line == 2


def test_missing_field_or_ring_rejected():
    with pytest.raises(ParseError):
        parse_session("ring vars = x\n")
    with pytest.raises(ParseError):
        parse_session("field char = 0\n")


def test_reserved_ring_variable():
    with pytest.raises(ReservedName):
        parse_session("field char = 0\nring vars = x, U\n")


def test_unknown_map_generator():
    text = "field char = 0\nring vars = x\nmap phi: w -> x\n"
    with pytest.raises(UnknownVariable):
        parse_session(text)


def test_fuzz_lite_line_deletion():
    # deleting any single line still either parses to a different
    # structure or raises a library error, never an unclassified crash
    from expmaps.errors import ExpmapsError

    text = builtin_session("russell")
    lines = [l for l in text.splitlines() if l.strip() and not l.startswith("#")]
    baseline = render_session(parse_session(text))
    for i in range(len(lines)):
        mutated = "\n".join(lines[:i] + lines[i + 1 :])
        try:
            session = parse_session(mutated)
        except ExpmapsError:
            continue
        assert render_session(session) != baseline
