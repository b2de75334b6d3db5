import hypothesis.strategies as st
from hypothesis import settings

from seqbes.syntax import BOT, And, Atom, Imp, Or, Sequent, degree

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ATOM_NAMES = ["p", "q", "r", "s"]

atoms = st.sampled_from([Atom(n) for n in ATOM_NAMES])


def _extend(children):
    return st.tuples(st.sampled_from([And, Or, Imp]), children, children).map(lambda t: t[0](t[1], t[2]))


formulas = st.recursive(st.one_of(atoms, st.just(BOT)), _extend, max_leaves=9).filter(lambda a: degree(a) <= 8)

sequents = st.builds(
    Sequent.of,
    st.lists(formulas, max_size=3),
    st.lists(formulas, max_size=3),
)

small_formulas = st.recursive(st.one_of(atoms, st.just(BOT)), _extend, max_leaves=4)
small_sequents = st.builds(Sequent.of, st.lists(small_formulas, max_size=2), st.lists(small_formulas, max_size=2))

atom_sets = st.frozensets(atoms, max_size=3)
atomic_sequents = st.builds(Sequent, atom_sets, atom_sets)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
