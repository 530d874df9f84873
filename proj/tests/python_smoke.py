"""Smoke tests for the python bindings: every exposed operation runs and a
handful of exact values are pinned."""

import sys
from fractions import Fraction


def main() -> int:
    import deuring

    # j-expansion opens 1/q + 744 + 196884 q + ...
    j = deuring.j_coefficients(4)
    assert j[:5] == [1, 744, 196884, 21493760, 864299970], j[:5]

    # class field data
    assert deuring.class_number(23) == 3
    assert deuring.is_fundamental(23) and not deuring.is_fundamental(12)
    assert deuring.hurwitz_class_number(3) == Fraction(1, 3)
    assert deuring.eisenstein_hp(7, 13) == 1
    assert deuring.kronecker(-23, 79) == -1

    # H_23 is the classical cubic
    h23 = deuring.hilbert_class_poly(23)
    assert h23 == [3491750, -5151296875, 12771880859375, 1], h23

    # supersingular polynomial of p = 79 has reduced degree floor(79/12) = 6
    ss = deuring.supersingular_polynomials(79)
    assert len(ss["s_tilde"]) - 1 == 6
    assert len(ss["roots"]) == len(ss["s"]) - 1

    # certified constant congruence H_3(j)|U(5) = 4 mod 5
    cert = deuring.certify(3, 5, 30)
    assert cert["certified"] and cert["constant"] is True
    assert cert["divides"] and cert["c0"] == 4
    assert cert["G"]["coeffs"] == [4]
    for key in ("D", "p", "divides", "G", "constant", "c0", "verified_through"):
        assert key in cert, key

    # the refusal case: no certificate for (D, p) = (239, 79)
    refuse = deuring.certify(239, 79, 30)
    assert not refuse["certified"]
    assert refuse["observed"][:3] == [44, 2, 62]

    # U(p) image window
    up = deuring.up_reduction(3, 5, 20)
    assert up["coeffs"][0] == 4 and up["valuation"] == 0

    # multiplicities of supersingular roots in H_239 mod 79 sum to h(-239)
    rep = deuring.multiplicity_report(239, 79)
    assert rep["ss_total"] == rep["class_number"] == 15

    # survey and scan surfaces
    sv = deuring.survey_family(13, 120, 30)
    assert 47 in sv["members"] and sv["refused"] == []
    scan = deuring.scan_surjectivity(13, 2, 1, 300)
    assert scan["exceptions"] == [7, 8, 11, 19, 67, 163]

    # degree-lowering correction at p = 13: denominator is x - 5
    d = deuring.delta_p(13, 40)
    assert d["denominator"]["coeffs"] == [8, 1]
    assert deuring.verify_frobenius_expansion([744, 1], 13, 60)

    # quaternionic side
    assert deuring.unit_count(13) == 2
    emb = deuring.embedding_numbers(13, 60)
    assert emb["a"][7] == 2 and emb["h"][7] == 2
    rep2 = deuring.deuring_cross_check(7, 13)
    assert rep2["aggregate_ok"] and rep2["per_curve_ok"]

    # domain errors surface as ValueError
    try:
        deuring.certify(5, 13, 30)
    except ValueError:
        pass
    else:
        raise AssertionError("certify(5, 13) should reject a non-discriminant")

    print("python smoke: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
