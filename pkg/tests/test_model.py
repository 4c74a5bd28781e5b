import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swhid.model import (
    BadPrefix,
    CoreIdentifier,
    DuplicateQualifier,
    LineRange,
    MalformedObjectId,
    MalformedQualifier,
    ObjectType,
    QualifiedIdentifier,
    SwhidParseError,
    UnknownObjectType,
    UnsupportedVersion,
    is_valid_origin,
    parse,
    validate,
)

from fuzz_util import run_parse_fuzz

# identifiers published by the archive, used as a golden parse corpus
GOLDEN = [
    (
        "swh:1:rev:0064fbd0ad69de205ea6ec6999f3d3895e9442c2"
        ";origin=https://gitorious.org/parmap/parmap.git",
        ObjectType.REVISION,
        "https://gitorious.org/parmap/parmap.git",
        None,
    ),
    (
        "swh:1:cnt:d5214ff9562a1fe78db51944506ba48c20de3379"
        ";origin=https://gitorious.org/parmap/parmap.git;lines=101-143",
        ObjectType.CONTENT,
        "https://gitorious.org/parmap/parmap.git",
        LineRange(101, 143),
    ),
    ("swh:1:cnt:94a9ed024d3859793618152ea559a168bbcbb5e2", ObjectType.CONTENT, None, None),
    ("swh:1:dir:d198bc9d7a6bcf6db04f476d29314f157507d505", ObjectType.DIRECTORY, None, None),
    ("swh:1:rev:309cf2674ee7a0749978cf8265ab91a60aea0f7d", ObjectType.REVISION, None, None),
    ("swh:1:rel:22ece559cc7cc2364edc5e5593d63ae8bd229f9f", ObjectType.RELEASE, None, None),
    ("swh:1:snp:c7c108084bc0bf3d81436bf980b46e98bd338453", ObjectType.SNAPSHOT, None, None),
    (
        "swh:1:dir:c6f07c2173a458d098de45d4c459a8f1916d900f"
        ";origin=https://github.com/id-Software/Quake-III-Arena/",
        ObjectType.DIRECTORY,
        "https://github.com/id-Software/Quake-III-Arena/",
        None,
    ),
    (
        "swh:1:cnt:41ddb23118f92d7218099a5e7a990cf58f1d07fa"
        ";origin=https://github.com/chrislgarry/Apollo-11;lines=64-72",
        ObjectType.CONTENT,
        "https://github.com/chrislgarry/Apollo-11",
        LineRange(64, 72),
    ),
]


@pytest.mark.parametrize("text,obj_type,origin,lines", GOLDEN)
def test_golden_corpus_parses(text, obj_type, origin, lines):
    qid = parse(text)
    assert qid.core.object_type is obj_type
    assert qid.origin == origin
    assert qid.lines == lines


@pytest.mark.parametrize("text", [g[0] for g in GOLDEN])
def test_golden_corpus_reprints_byte_identically(text):
    assert str(parse(text)) == text


HEX40 = "0" * 40


@pytest.mark.parametrize(
    "text,exc",
    [
        ("", BadPrefix),
        ("swh", BadPrefix),
        ("SWH:1:cnt:" + HEX40, BadPrefix),
        ("doi:10.1000/xyz", BadPrefix),
        ("swh:2:rev:0064fbd0ad69de205ea6ec6999f3d3895e9442c2", UnsupportedVersion),
        ("swh:01:cnt:" + HEX40, UnsupportedVersion),
        ("swh:", UnsupportedVersion),
        ("swh:1", UnknownObjectType),
        ("swh:1:", UnknownObjectType),
        ("swh:1:blob:" + HEX40, UnknownObjectType),
        ("swh:1:CNT:" + HEX40, UnknownObjectType),
        ("swh:1:cnt", MalformedObjectId),
        ("swh:1:cnt:", MalformedObjectId),
        ("swh:1:cnt:abc", MalformedObjectId),
        ("swh:1:cnt:94A9ED024D3859793618152EA559A168BBCBB5E2", MalformedObjectId),
        ("swh:1:cnt:" + "a" * 39 + "g", MalformedObjectId),
        ("swh:1:cnt:" + HEX40 + ":extra", MalformedObjectId),
        ("swh:1:cnt:" + HEX40 + " ", MalformedObjectId),
        ("swh:1:cnt:" + HEX40 + ";", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";origin", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";color=red", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";origin=", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";origin=not a url", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";origin=https://x.example/a;b", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=0", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=5-3", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=12-", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=a-b", MalformedQualifier),
        ("swh:1:cnt:" + HEX40 + ";lines=1;lines=2", DuplicateQualifier),
        (
            "swh:1:cnt:" + HEX40 + ";origin=https://a.example/;origin=https://b.example/",
            DuplicateQualifier,
        ),
    ],
)
def test_rejections_are_classified(text, exc):
    with pytest.raises(exc):
        parse(text)
    # every rejection is also an instance of the common base
    with pytest.raises(SwhidParseError):
        parse(text)


def test_error_offsets():
    with pytest.raises(BadPrefix) as e:
        parse("")
    assert e.value.offset == 0

    with pytest.raises(UnsupportedVersion) as e:
        parse("swh:2:cnt:" + HEX40)
    assert e.value.offset == 4

    with pytest.raises(UnknownObjectType) as e:
        parse("swh:1:blob:" + HEX40)
    assert e.value.offset == 6

    with pytest.raises(MalformedObjectId) as e:
        parse("swh:1:cnt:abc")
    assert e.value.offset == 10
    assert "3" in e.value.message and "40" in e.value.message

    qualifier_off = len("swh:1:cnt:" + HEX40) + 1
    with pytest.raises(MalformedQualifier) as e:
        parse("swh:1:cnt:" + HEX40 + ";color=red")
    assert e.value.offset == qualifier_off


def test_qualifiers_accepted_in_either_order():
    core = "swh:1:cnt:d5214ff9562a1fe78db51944506ba48c20de3379"
    origin_first = parse(core + ";origin=https://x.example/r.git;lines=4-9")
    lines_first = parse(core + ";lines=4-9;origin=https://x.example/r.git")
    assert origin_first == lines_first
    # canonical print always emits origin before lines
    assert str(lines_first) == core + ";origin=https://x.example/r.git;lines=4-9"


def test_single_line_qualifier():
    qid = parse("swh:1:cnt:" + HEX40 + ";lines=101")
    assert qid.lines == LineRange(101)
    assert str(qid.lines) == "101"
    assert str(qid).endswith(";lines=101")


def test_one_line_range_with_equal_bounds_roundtrips():
    text = "swh:1:cnt:" + HEX40 + ";lines=7-7"
    assert str(parse(text)) == text


def test_lines_on_non_content_parses_but_warns():
    text = "swh:1:dir:" + HEX40 + ";lines=1-2"
    qid = parse(text)  # lenient
    assert qid.lines == LineRange(1, 2)
    report = validate(text)
    assert report.ok
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert violation.severity == "warning"
    assert violation.rule == "LinesOnNonContent"


def test_validate_ok_has_no_violations():
    report = validate("swh:1:dir:d198bc9d7a6bcf6db04f476d29314f157507d505")
    assert report.ok
    assert report.violations == ()
    assert str(report.identifier) == "swh:1:dir:d198bc9d7a6bcf6db04f476d29314f157507d505"


def test_validate_reports_errors_with_offsets():
    report = validate("")
    assert not report.ok
    assert report.violations[0].rule == "BadPrefix"
    assert report.violations[0].offset == 0

    report = validate("swh:1:cnt:abc")
    assert not report.ok
    assert report.violations[0].rule == "MalformedObjectId"
    assert report.violations[0].offset == 10


def test_value_construction_guards():
    with pytest.raises(ValueError):
        CoreIdentifier(ObjectType.CONTENT, "xyz")
    with pytest.raises(ValueError):
        CoreIdentifier(ObjectType.CONTENT, "A" * 40)
    with pytest.raises(ValueError):
        CoreIdentifier(ObjectType.CONTENT, HEX40, scheme_version=2)
    with pytest.raises(ValueError):
        LineRange(0)
    with pytest.raises(ValueError):
        LineRange(9, 3)
    with pytest.raises(ValueError):
        QualifiedIdentifier(CoreIdentifier(ObjectType.CONTENT, HEX40), origin="not a url")


def test_is_valid_origin():
    assert is_valid_origin("https://gitorious.org/parmap/parmap.git")
    assert is_valid_origin("svn+ssh://svn.example.org/repo")
    assert not is_valid_origin("")
    assert not is_valid_origin("not a url")
    assert not is_valid_origin("git@github.com:a/b.git")  # scp syntax, not a URL
    assert not is_valid_origin("https://a.example/x;y")
    assert not is_valid_origin("https:")


# --- property tests ---------------------------------------------------

hex40_st = st.text("0123456789abcdef", min_size=40, max_size=40)

origin_st = st.builds(
    lambda host, path: f"https://{host}.example/{path}",
    st.text("abcdefghijklmnopqrstuvwxyz0123456789", min_size=1, max_size=12),
    st.text("abcdefghijklmnopqrstuvwxyz0123456789/._-", max_size=24),
)


@st.composite
def line_ranges(draw):
    start = draw(st.integers(min_value=1, max_value=10**6))
    end = draw(st.one_of(st.none(), st.integers(min_value=start, max_value=start + 10**4)))
    return LineRange(start, end)


qualified_st = st.builds(
    QualifiedIdentifier,
    st.builds(CoreIdentifier, st.sampled_from(list(ObjectType)), hex40_st),
    origin=st.one_of(st.none(), origin_st),
    lines=st.one_of(st.none(), line_ranges()),
)


@given(qualified_st)
def test_roundtrip_property(qid):
    assert parse(str(qid)) == qid


@given(st.text(max_size=200))
@settings(max_examples=300)
def test_parse_total_over_arbitrary_text(text):
    try:
        qid = parse(text)
    except SwhidParseError:
        return
    assert parse(str(qid)) == qid


def test_quick_fuzz():
    stats = run_parse_fuzz(10_000)
    assert stats["total"] == 10_000
    assert stats["valid"] > 0 and stats["rejected"] > 0
