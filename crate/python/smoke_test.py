"""Smoke test for the invseq_lab extension module.

Build and run from the repository root:

    cargo build -p invseq-py --release --features extension-module
    cp target/release/libinvseq_lab.so python/invseq_lab.so
    python3 python/smoke_test.py
"""

import invseq_lab as il


def main():
    e = il.InversionSequence([0, 1, 1, 0])
    assert (e.dist(), e.max_value(), e.prmx(), e.rank()) == (2, 1, 3, 1)
    assert il.InversionSequence([0, 1, 0, 3]).contains("102")
    try:
        il.InversionSequence([0, 1, 0, 3]).rank()
    except il.InvseqError:
        pass
    else:
        raise AssertionError("rank of a 102-containing sequence must raise")
    assert il.InversionSequence([0, 1, 0, 1]).remark_dedup().entries == [0, 0, 1]
    assert il.reduction([5, 2, 5, 9]) == [1, 0, 1, 2]

    seqs = il.enumerate_avoiding(5, dist=3)
    assert len(seqs) == 23
    total = sum(c["count"] for c in il.count_table(5) if c["n"] == 5)
    assert total == 40

    assert il.eta([(1, 0, [0, 0, 0])]) == [(1, 1, 1), (0, -1, 2)]
    assert il.eta_inv([(1, 1, 1), (0, -1, 2)]) == [(1, 0, [0, 0, 0])]
    assert len(il.enumerate_paths("simple-h", 3, cls="B")) == 1

    E = il.solve_e(16, 8, 8)
    assert sum(E.coeff(9, 7, t) for t in range(8)) == 749
    g = E.specialize("x=1,z=1")
    assert [g.coeff(0, m) for m in range(1, 9)] == [2, 9, 52, 340, 2394, 17710, 135720, 1068012]

    assert il.fuss3(3) == 22
    assert il.count_dist_closed(16, 8) == 135439
    assert il.dist_total(30) > 2**64
    assert [v for _, v in il.oeis_fetch("A002293")[:5]] == [1, 1, 4, 22, 140]

    report = il.verify("closed-forms")
    assert report["status"] == "pass", report
    print("smoke test passed:", len(report["checks"]), "closed-form checks")


if __name__ == "__main__":
    main()
