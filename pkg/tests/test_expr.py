import pytest
from helpers import el

from app import errors
from app.cogs.expr import expr_funcs as expr

PATTERN = "block((0, 0), [(0, 1), (0, 2)], nat)"
OPTIONS = expr.Options(rank=2)


def run_set(text, options=OPTIONS):
    return expr.evaluate_set(expr.parse(text), options)


def test_normal_form():
    shown = expr.show(expr.parse("diff( block((0,0),[(0,1), (0,2)],nat) )"))
    assert shown == f"diff({PATTERN})"
    assert expr.show(expr.parse("scale(points((0,1)),1/2)")) == (
        "scale(points((0, 1)), 1/2)"
    )
    assert expr.show(expr.parse('load("sets/d.json")')) == (
        'load("sets/d.json")'
    )


def test_syntax_errors():
    with pytest.raises(errors.ExprSyntaxError) as info:
        expr.parse("diff(")
    assert info.value.line == 1
    with pytest.raises(errors.ExprSyntaxError):
        expr.parse("sort(points((0, 1)))")


def test_looks_like_expr():
    assert expr.looks_like_expr("diff(load(\"d.json\"))")
    assert expr.looks_like_expr("  union(points((0, 1)), points())")
    assert not expr.looks_like_expr("sets/d.json")


def test_set_operators():
    assert run_set(f"diff({PATTERN})").points() == [el(0, 1), el(0, 2)]
    assert run_set(f"iter({PATTERN}, 2)").points() == [el(0, 1)]
    u = run_set("union(points((0, 1)), points((0, 3)), points((1, 0)))")
    assert u.points() == [el(0, 1), el(0, 3), el(1, 0)]
    moved = run_set("translate(points((0, 1)), (1, 0))")
    assert moved.points() == [el(1, 1)]
    assert run_set("scale(points((0, 2)), 1/2)").points() == [el(0, 1)]
    phased = run_set(f"psigma({PATTERN}, [(0, 1), (0, 2)])")
    assert el(0, 3) in phased and el(0, 1) not in phased


def test_load(set_file):
    d = run_set(f'load("{set_file.as_posix()}")')
    assert el(0, 4) in d and el(0, 2) not in d
    with pytest.raises(errors.ConversionError):
        run_set('load("nowhere.json")')


def test_reports_stay_on_top():
    with pytest.raises(errors.ValidationError):
        run_set(f"diff(decompose({PATTERN}))")
    report = expr.run(expr.parse(f"decompose({PATTERN})"), OPTIONS)
    assert len(report["pieces"]) == 2


def test_rank_is_checked():
    with pytest.raises(errors.RankMismatch):
        run_set(PATTERN, expr.Options(rank=3))


def test_set_report():
    report = expr.run(expr.parse("points((0, 1), (0, 5))"), OPTIONS)
    assert report["size"] == 2
    assert report["window"] == ["(0, 1)", "(0, 5)"]
    infinite = expr.run(expr.parse(PATTERN), OPTIONS)
    assert "size" not in infinite


@pytest.mark.parametrize(
    "text",
    [
        f"iter({PATTERN}, 2)",
        'union(load("a.json"), points(), points((1/2, -3)))',
        "psigma(block((0, 0), [(0, 1)], join({-3}, from(2))), [(0, 1)])",
        f"witness({PATTERN}, scale({PATTERN}, 1/3))",
    ],
)
def test_show_reads_back(text):
    e = expr.parse(text)
    assert expr.parse(expr.show(e)) == e
