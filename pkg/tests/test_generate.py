import numpy as np
import pytest

from cmstruct import (
    GeneratorParams,
    extract_features,
    generate_corpus,
    generate_map,
    rule_label,
    serialize_map,
    validate,
)
from cmstruct.errors import InvalidParams
from cmstruct.features import FeatureVector
from cmstruct.generate import corpus_from_manifest, default_params, manifest_to_bytes
from cmstruct.graph import degree_sequence
from cmstruct.labels import LABELS, StructureLabel


def spoke_params(**over):
    kw = dict(kind=StructureLabel.SPOKE, size_range=(6, 6), hubs=1, seed=1)
    kw.update(over)
    return GeneratorParams(**kw)


class TestShapes:
    def test_pure_star(self):
        cm, label = generate_map(spoke_params(seed=11))
        assert label is StructureLabel.SPOKE
        degrees = sorted(degree_sequence(validate(cm)).degrees)
        assert degrees == [1, 1, 1, 1, 1, 5]

    def test_pure_path(self):
        params = GeneratorParams(kind=StructureLabel.CHAIN, size_range=(5, 5), seed=3)
        cm, _ = generate_map(params)
        assert sorted(degree_sequence(validate(cm)).degrees) == [1, 1, 2, 2, 2]

    def test_chain_without_branches_never_exceeds_degree_two(self):
        for seed in range(30):
            params = GeneratorParams(kind=StructureLabel.CHAIN, size_range=(4, 30), seed=seed)
            cm, _ = generate_map(params)
            assert max(degree_sequence(validate(cm)).degrees) == 2

    def test_multi_hub_spoke(self):
        params = GeneratorParams(
            kind=StructureLabel.SPOKE, size_range=(12, 12), hubs=3, seed=5
        )
        cm, _ = generate_map(params)
        degrees = degree_sequence(validate(cm)).degrees
        # 3 hubs with >= 2 leaves each plus hub links; 9 leaves of degree 1
        assert sorted(degrees)[:9] == [1] * 9
        assert sorted(degrees)[9] >= 3

    def test_single_hub_spoke_median_is_one(self):
        for size in (6, 9, 14, 25):
            cm, _ = generate_map(spoke_params(size_range=(size, size), seed=size))
            fv = extract_features(validate(cm))
            assert fv.q2_degree == 1.0

    def test_network_degree_profile(self):
        for seed in range(20):
            params = GeneratorParams(kind=StructureLabel.NETWORK, size_range=(6, 40), seed=seed)
            cm, _ = generate_map(params)
            g = validate(cm)
            degrees = degree_sequence(g).degrees
            assert min(degrees) >= 2
            assert sum(1 for d in degrees if d >= 3) >= -(-g.node_count // 4)
            # no node may hold more than half of all edge endpoints
            assert max(degrees) <= g.edge_count

    def test_spoke_std_exceeds_chain_std(self):
        for size in range(6, 31, 4):
            spoke_cm, _ = generate_map(spoke_params(size_range=(size, size), seed=size))
            chain_cm, _ = generate_map(
                GeneratorParams(kind=StructureLabel.CHAIN, size_range=(size, size), seed=size)
            )
            spoke_std = extract_features(validate(spoke_cm)).std_degree
            chain_std = extract_features(validate(chain_cm)).std_degree
            assert spoke_std > chain_std


class TestDeterminism:
    def test_same_seed_same_map(self):
        params = spoke_params(extra_edge_prob=0.4, seed=99)
        a, _ = generate_map(params)
        b, _ = generate_map(params)
        assert serialize_map(a) == serialize_map(b)

    def test_different_seed_changes_map(self):
        a, _ = generate_map(spoke_params(size_range=(8, 30), seed=1))
        b, _ = generate_map(spoke_params(size_range=(8, 30), seed=2))
        assert serialize_map(a) != serialize_map(b)

    def test_corpus_regenerates_from_manifest(self):
        corpus = generate_corpus(5, default_params(0.2), master_seed=17)
        again = corpus_from_manifest(manifest_to_bytes(corpus.manifest))
        assert [(serialize_map(c), l) for c, l in corpus.entries] == [
            (serialize_map(c), l) for c, l in again.entries
        ]


class TestCorpus:
    def test_counts_and_order(self):
        corpus = generate_corpus(4, default_params(0.0), master_seed=1)
        assert len(corpus.entries) == 12
        labels = [l for _, l in corpus.entries]
        assert labels == [StructureLabel.CHAIN] * 4 + [StructureLabel.NETWORK] * 4 + [
            StructureLabel.SPOKE
        ] * 4
        ids = [c.map_id for c, _ in corpus.entries]
        assert ids[0] == "chain-0000" and ids[-1] == "spoke-0003"

    def test_all_maps_validate_cleanly(self, noisy_corpus):
        for cm, _ in noisy_corpus.entries:
            assert validate(cm).warnings == ()

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            generate_corpus(0, default_params())
        with pytest.raises(InvalidParams):
            GeneratorParams(kind=StructureLabel.CHAIN, size_range=(2, 5))
        with pytest.raises(InvalidParams):
            GeneratorParams(kind=StructureLabel.SPOKE, size_range=(5, 9), hubs=2)
        with pytest.raises(InvalidParams):
            GeneratorParams(kind=StructureLabel.NETWORK, size_range=(3, 9))
        with pytest.raises(InvalidParams):
            GeneratorParams(kind=StructureLabel.CHAIN, branch_prob=1.5)
        with pytest.raises(InvalidParams):
            generate_corpus(5, {StructureLabel.CHAIN: default_params()[StructureLabel.CHAIN]})

    def test_kind_mismatch_rejected(self):
        params = default_params()
        params[StructureLabel.CHAIN] = params[StructureLabel.SPOKE]
        with pytest.raises(InvalidParams):
            generate_corpus(2, params)


class TestOracle:
    def test_noise_zero_labels_recoverable(self, noise0_corpus):
        for cm, label in noise0_corpus.entries:
            assert rule_label(extract_features(validate(cm))) is label

    def test_recoverable_across_hub_counts(self):
        for hubs in (1, 2, 3):
            params = {
                StructureLabel.CHAIN: GeneratorParams(kind=StructureLabel.CHAIN, size_range=(4, 24)),
                StructureLabel.NETWORK: GeneratorParams(kind=StructureLabel.NETWORK, size_range=(4, 24)),
                # spoke maps of size 3 coincide with paths, so stay >= 4 nodes
                StructureLabel.SPOKE: GeneratorParams(
                    kind=StructureLabel.SPOKE, size_range=(max(4, 3 * hubs), 24), hubs=hubs
                ),
            }
            corpus = generate_corpus(25, params, master_seed=hubs)
            for cm, label in corpus.entries:
                assert rule_label(extract_features(validate(cm))) is label

    def test_rule_label_fixture_values(self):
        fv = FeatureVector("m", 5, 4, 0.8, 1.6, 0.49, 1.0, 2.0, 2.0, 2)
        assert rule_label(fv) is StructureLabel.CHAIN
        fv = FeatureVector("m", 6, 5, 5 / 6, 5 / 3, 1.49, 1.0, 1.0, 1.0, 5)
        assert rule_label(fv) is StructureLabel.SPOKE
        fv = FeatureVector("m", 8, 12, 1.5, 3.0, 0.7, 2.0, 3.0, 3.5, 5)
        assert rule_label(fv) is StructureLabel.NETWORK


def test_admission_rule_always_met():
    rng = np.random.default_rng(0)
    for _ in range(60):
        kind = LABELS[int(rng.integers(0, 3))]
        lo = 4 if kind is not StructureLabel.SPOKE else 6
        params = GeneratorParams(
            kind=kind,
            size_range=(lo, int(rng.integers(lo, 40))),
            hubs=2 if kind is StructureLabel.SPOKE else 1,
            branch_prob=float(rng.uniform(0, 1)) if kind is StructureLabel.CHAIN else 0.0,
            extra_edge_prob=float(rng.uniform(0, 0.6)),
            seed=int(rng.integers(0, 2**63)),
        )
        cm, _ = generate_map(params)
        g = validate(cm)
        assert g.node_count >= 3 and g.edge_count >= 2
