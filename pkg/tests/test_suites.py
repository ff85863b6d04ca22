from costprob.suites import curated_lemma1_triples, lattice_laws, lemma1, monotonicity, residuation
from costprob.graph import cycle
from costprob.lattice import exponential, tensor_product
from costprob.homs import hom_exists

import oracles as O


def test_lattice_laws_small():
    rep = lattice_laws(max_vertices=2, samples=20)
    assert rep.violation_count == 0 and not rep.failed
    assert rep.checks["union_associative"]["checked"] == 13 ** 3 + 20


def test_residuation_exhaustive():
    rep = residuation(max_vertices=2)
    assert rep.violation_count == 0
    assert rep.checks["hom_residuation"]["checked"] == 19 ** 3


def test_residuation_against_oracle():
    graphs = [g for n in range(3) for g in O.all_digraphs(n)]
    for a in graphs[::5]:
        for b in graphs[::3]:
            e = O.exponential(a, b)
            for c in graphs[::4]:
                left = O.hom(O.product(c, a), b) is not None
                right = O.hom(c, e) is not None
                assert left == right


def test_monotonicity_small():
    rep = monotonicity(count=60, max_vertices=4, exhaustive_vertices=2)
    assert rep.violation_count == 0


def test_lemma1_is_a_measurement():
    rep = lemma1(count=20)
    assert not rep.expected_clean and not rep.failed
    assert sum(rep.measurements["tally"].values()) == 20
    assert len(rep.measurements["curated"]) == len(curated_lemma1_triples())
