"""Smoke test for the mpca extension module: python python/smoke.py"""

import mpca


def main():
    q = mpca.Poly("x^5+x^2+1")
    assert q.degree == 5 and q.is_primitive()
    a, b = mpca.synthesize_ca(q)
    assert (str(a), str(b)) == ("01111", "11110")
    assert str(a.concat_double().concat_double()) == "01110011111111001110"

    rule = mpca.RuleVector("8C031@20")
    base, k = rule.char_poly().irreducible_power()
    assert str(base) == "x^5+x^4+x^2+x+1" and k == 4

    assert mpca.lfsr_bits(mpca.Poly("x^3+x^2+1"), 7, seed="110") == [1, 1, 0, 1, 0, 0, 1]
    assert mpca.cyclotomic_coset(7, 5) == [7, 14, 28, 25, 19]
    p2 = mpca.Poly("x^5+x^4+x^2+x+1")
    assert str(mpca.coset_char_poly(p2, 7)) == "x^5+x^2+1"

    p1 = mpca.Poly("x^3+x^2+1")
    ks = mpca.shrink(p1, p2, 248, s1="110", s2="11111")
    assert mpca.min_period(ks, 124) == 124
    lc, _ = mpca.berlekamp_massey(ks)
    assert 10 < lc <= 20

    basic, ca1, ca2, p = mpca.model_shrinking_generator(3, p2)
    assert str(basic) == "x^5+x^2+1" and p == 4
    state = ca1.embed(ks)
    assert ca1.cell_sequence(state, 248) == ks
    report = mpca.verify_model(p1, p2, ca1, s1="110", s2="11111")
    assert report["verdict"] is True and report["measured_period"] == "124"

    ccsg = mpca.model_ccsg(p1, p2, df_stages=[1], s1="110", s2="11111")
    assert ccsg["verdict"] is True and ccsg["p"] == 4

    assert mpca.predict_counts(5, 4) == ([1, 16, 256, 8192], 8465)

    rows = mpca.RuleVector("0111001110").cycles()
    assert sum(r["total_states"] for r in rows) == 1024
    assert mpca.CaState("CCF33@20").state_class() == "doubly_symmetric"

    try:
        mpca.synthesize_ca(mpca.Poly("x^4+x^2+1"))
    except ValueError as e:
        assert "reducible" in str(e)
    else:
        raise AssertionError("reducible polynomial accepted")
    print("smoke ok")


if __name__ == "__main__":
    main()
