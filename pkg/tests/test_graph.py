import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmstruct import (
    ConceptMap,
    Edge,
    Node,
    degree_sequence,
    parse_map,
    scan_directory,
    serialize_map,
    validate,
)
from cmstruct.errors import (
    DanglingEdge,
    DuplicateNodeId,
    MalformedInput,
    SelfLoop,
    TooSmall,
)


class TestParseCsv:
    def test_nodes_inferred_from_endpoints(self):
        cm = parse_map(b"a,b\nb,c", "csv", map_id="m")
        assert [n.node_id for n in cm.nodes] == ["a", "b", "c"]
        assert [(e.source, e.target) for e in cm.edges] == [("a", "b"), ("b", "c")]
        assert cm.map_id == "m"

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            parse_map(b"a,a", "csv")

    def test_blank_lines_skipped(self):
        cm = parse_map(b"a,b\n\nb,c\n", "csv")
        assert len(cm.edges) == 2

    def test_wrong_field_count(self):
        with pytest.raises(MalformedInput):
            parse_map(b"a,b,c", "csv")
        with pytest.raises(MalformedInput):
            parse_map(b"a", "csv")

    def test_unknown_format(self):
        with pytest.raises(MalformedInput):
            parse_map(b"a,b", "graphml")


class TestParseJson:
    def test_round_trip_fields(self):
        doc = {
            "id": "m1",
            "nodes": [{"id": "a", "label": "Energy"}, {"id": "b"}],
            "edges": [{"source": "a", "target": "b", "label": "flows to"}],
            "extra": "ignored",
        }
        cm = parse_map(json.dumps(doc).encode(), "json")
        assert cm.map_id == "m1"
        assert cm.nodes[0].label == "Energy"
        assert cm.nodes[1].label is None
        assert cm.edges[0].label == "flows to"

    def test_dangling_edge(self):
        doc = {"id": "m", "nodes": [{"id": "a"}], "edges": [{"source": "x", "target": "a"}]}
        with pytest.raises(DanglingEdge):
            parse_map(json.dumps(doc).encode(), "json")

    def test_duplicate_node_id(self):
        doc = {"id": "m", "nodes": [{"id": "a"}, {"id": "a"}], "edges": []}
        with pytest.raises(DuplicateNodeId):
            parse_map(json.dumps(doc).encode(), "json")

    def test_self_loop(self):
        doc = {"id": "m", "nodes": [{"id": "a"}], "edges": [{"source": "a", "target": "a"}]}
        with pytest.raises(SelfLoop):
            parse_map(json.dumps(doc).encode(), "json")

    def test_malformed_bytes(self):
        with pytest.raises(MalformedInput):
            parse_map(b"{nope", "json")
        with pytest.raises(MalformedInput):
            parse_map(b"[1,2]", "json")

    def test_missing_id_uses_fallback(self):
        doc = {"nodes": [{"id": "a"}], "edges": []}
        cm = parse_map(json.dumps(doc).encode(), "json", map_id="stem")
        assert cm.map_id == "stem"
        with pytest.raises(MalformedInput):
            parse_map(json.dumps(doc).encode(), "json")


class TestValidate:
    def test_minimal_admissible(self, path5_cm):
        g = validate(parse_map(b"a,b\nb,c", "csv", map_id="m"))
        assert (g.node_count, g.edge_count) == (3, 2)
        assert g.warnings == ()

    def test_too_small(self):
        with pytest.raises(TooSmall):
            validate(parse_map(b"a,b", "csv"))

    def test_dedup_with_warning(self):
        cm = ConceptMap(
            "m",
            nodes=(Node("a"), Node("b"), Node("c")),
            edges=(Edge("a", "b"), Edge("a", "b"), Edge("b", "a"), Edge("b", "c")),
        )
        g = validate(cm)
        assert g.edge_count == 3  # reverse pair is distinct, duplicate dropped
        assert len(g.warnings) == 1

    def test_dedup_below_threshold_is_too_small(self):
        cm = ConceptMap(
            "m",
            nodes=(Node("a"), Node("b"), Node("c")),
            edges=(Edge("a", "b"), Edge("a", "b")),
        )
        with pytest.raises(TooSmall):
            validate(cm)

    def test_idempotent(self):
        cm = ConceptMap(
            "m",
            nodes=(Node("a"), Node("b"), Node("c")),
            edges=(Edge("a", "b"), Edge("a", "b"), Edge("b", "c")),
        )
        first = validate(cm)
        deduped = ConceptMap(
            "m",
            nodes=cm.nodes,
            edges=(Edge("a", "b"), Edge("b", "c")),
        )
        second = validate(deduped)
        assert second.adjacency == first.adjacency
        assert second.warnings == ()

    def test_disconnected_admitted(self):
        g = validate(parse_map(b"a,b\nc,d", "csv", map_id="m"))
        assert (g.node_count, g.edge_count) == (4, 2)


class TestDegreeSequence:
    def test_path(self, path5_cm):
        assert degree_sequence(validate(path5_cm)).degrees == (1, 2, 2, 2, 1)

    def test_star(self, star6_cm):
        assert degree_sequence(validate(star6_cm)).degrees == (5, 1, 1, 1, 1, 1)

    def test_net4(self, net4_cm):
        assert degree_sequence(validate(net4_cm)).degrees == (3, 3, 2, 2)

    def test_relabel_invariance(self, net4_cm):
        renamed = ConceptMap(
            "other",
            nodes=tuple(Node(f"concept_{n.node_id}") for n in net4_cm.nodes),
            edges=tuple(
                Edge(f"concept_{e.source}", f"concept_{e.target}") for e in net4_cm.edges
            ),
        )
        assert degree_sequence(validate(renamed)) == degree_sequence(validate(net4_cm))


@st.composite
def random_map(draw):
    n = draw(st.integers(min_value=3, max_value=12))
    ids = [f"n{i}" for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=2, max_size=24, unique=True))
    return ConceptMap(
        "h",
        nodes=tuple(Node(i) for i in ids),
        edges=tuple(Edge(ids[a], ids[b]) for a, b in chosen),
    )


@given(random_map())
@settings(max_examples=150)
def test_degree_sum_is_twice_edges(cm):
    g = validate(cm)
    assert sum(degree_sequence(g).degrees) == 2 * g.edge_count
    assert len(degree_sequence(g).degrees) == g.node_count


@given(random_map())
@settings(max_examples=60)
def test_serialize_parse_round_trip(cm):
    assert parse_map(serialize_map(cm), "json") == cm


def test_round_trip_preserves_labels(star6_cm):
    cm = ConceptMap(
        "m",
        nodes=(Node("a", "A"), Node("b", None), Node("c", "")),
        edges=(Edge("a", "b", "rel"), Edge("b", "c")),
    )
    again = parse_map(serialize_map(cm), "json")
    assert again == cm


def test_scan_directory_order_and_manifest_skip(tmp_path):
    (tmp_path / "b.csv").write_bytes(b"a,b\nb,c")
    (tmp_path / "a.json").write_bytes(serialize_map(parse_map(b"x,y\ny,z", "csv", map_id="a")))
    (tmp_path / "manifest.json").write_text("{}")
    (tmp_path / "notes.txt").write_text("ignored")
    found = list(scan_directory(tmp_path))
    assert [p.name for p, _ in found] == ["a.json", "b.csv"]
    assert found[1][1].map_id == "b"


def test_scan_directory_requires_directory(tmp_path):
    with pytest.raises(MalformedInput):
        list(scan_directory(tmp_path / "missing"))
