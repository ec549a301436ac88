"""Transcribed family data.

Every polynomial below is entered once, as text, and parsed by
:func:`ectorsion.exact_math.parse_expr`.  A family either prints its own
coefficients (``A``/``B``) or is derived from a parent by a substitution
(``sub``, written in the new parameter).  When both are present the printed
coefficients are reconciled with the composed ones through a quartic twist.

Point coordinates in ``parent_points`` are written in the parent's parameter
and are carried along the substitution and the twist.  Points in ``points``
are already in the entry's own coordinates.
"""

Z8_A = "1 - 8*v + 16*v^2 - 16*v^3 + 8*v^4"
Z8_B = "16*(v-1)^4*v^4"

Z26_A = "37 - 84*v + 102*v^2 - 36*v^3 - 3*v^4"
Z26_B = "32*(-1+v)^3*(1+v)^3*(-5+3*v)"

# Hadano's two-parameter model with b chosen so that a point appears and
# denominators cleared: (A, B, P, T) as strings in a and v.
HADANO_2PARAM = {
    "A": ("2*(-1 + 8*a^2 - 10*a^4 + 3*a^8 + 4*a*v + 8*a^3*v - 12*a^5*v + 2*v^2"
          " + 6*a^4*v^2 - 4*a*v^3 - v^4)"),
    "B": "(-1 + a^2 - v)^3*(1 - 4*a + 3*a^2 - v)*(-1 + a^2 + v)^3*(1 + 4*a + 3*a^2 + v)",
    "P": ("-(1 - 4*a + 3*a^2 - v)*(-1 + a^2 + v)^3",
          "4*(1 - 4*a + 3*a^2 - v)*(-a + a^3 - v)*(-1 + a^2 + v)^3"),
    # order 6: the 3-torsion point (b^2, a b^2) plus (0, 0), rescaled
    "T": ("(1 + v - a^2)*(a^2 + v - 1)*(4*a - 3*a^2 + v - 1)*(3*a^2 + 4*a + v + 1)",
          "4*a*(1 + v - a^2)*(a^2 + v - 1)*(a + v - a^3)*(4*a - 3*a^2 + v - 1)*(3*a^2 + 4*a + v + 1)"),
}

# the catalog stores the diagonal a = v + 1
_a = "(v+1)"
HADANO_A = HADANO_2PARAM["A"].replace("a", _a)
HADANO_B = HADANO_2PARAM["B"].replace("a", _a)
HADANO_P = tuple(s.replace("a", _a) for s in HADANO_2PARAM["P"])
HADANO_T = tuple(s.replace("a", _a) for s in HADANO_2PARAM["T"])

# Rank-one substitutions for the Z/8 family: (x in v, v in w).
Z8_RANK1 = {
    1: ("-16*v^4*(1 - 4*v + 2*v^2)/(-1 + 4*v)^2", "(1 + w^2)/(3 - 2*w + w^2)"),
    2: ("-(-1 + v)^4*(-5 + 8*v)*(-5 + 18*v)/(4*(-2 + 3*v)^2)", "5*(1 + w^2)/(2*(9 + 4*w^2))"),
    3: ("-4*(-3 + v)*(-1 + v)^2*v^4*(-1 + 3*v)/(1 - 4*v + 2*v^2)^2", "(1 + 3*w^2)/(3 + w^2)"),
    4: ("16*(-1 + v)^2*v^2*(1 - 2*v + 2*v^2)", "(-2 + w)*w/(-2 + w^2)"),
    5: ("-64*(-1 + v)^2*v^2*(-1 - v + v^2)/(-1 - 4*v + 4*v^2)^2", "(-2 + w)*w/(1 + w^2)"),
    6: ("-(-1 + v)^2*(1 - 6*v + 4*v^2)", "(2 - 2*w + w^2)/(4 + w^2)"),
    7: ("4*v^4", "(5 - w^2)/(4*(1 + w))"),
    8: ("-(-1 + v)^2*(-5 + 2*v)^2*(25 - 70*v + 36*v^2)/(-7 + 6*v)^2", "(34 - 6*w + w^2)/(36 + w^2)"),
    9: (None, "(w^2 + 12)/(2*(w^2 + 4))"),
    10: (None, "-2*w/(1 - w + w^2)"),
}

Z26_RANK1 = {
    1: ("8*(-1+v)^3*(1+v)", "3*(-1+w)*(1+w)/(-29-8*w+w^2)"),
    2: ("4*(1+v)^3", "3*(-3+w)*(3+w)/(-45-24*w+w^2)"),
    3: ("2*(-1+v)*(1+v)^2*(-5+3*v)", "(-7+w^2)/(1-4*w+w^2)"),
    4: ("-16*(-1+v)^2*(1+v)", "(-11+w^2)/(5-4*w+w^2)"),
    5: ("16*(-5+3*v)*(3*v-7)^2", "3*(261+w^2)/(153-24*w+w^2)"),
    6: ("16*(1+v)*(v-5)^2", "(135-w^2)/(141+24*w+w^2)"),
    7: ("4*(-1+v)^2*(1+v)^2*(41-54*v+49*v^2)/(-1+3*v)^2", "(41-w^2)/(2*(27+7*w))"),
    8: ("(-5+3*v)*(3*v-1)^2", "3/(5-w^2)"),
    9: ("2*(v-1)*(v+1)^3*(3*v-1)^2/(2*v+2)^2", "(-7-2*w^2)/(3*(-3+2*w^2))"),
}

ENTRIES = [
    dict(
        id="Z8_BASE", param="v", torsion="Z/8",
        A=Z8_A, B=Z8_B,
        generator=("-4*v^3*(v-1)", "4*v^3*(v-1)*(2*v-1)"),
        provenance="Z/8 family from the Tate normal form with b = (2v-1)(v-1), c = b/v",
    ),
    dict(
        id="Z26_BASE", param="v", torsion="Z/2xZ/6",
        A=Z26_A, B=Z26_B,
        generator=("8*(-1+v)*(1+v)*(-5+3*v)", "8*(-3+v)^2*(-1+v)*(1+v)*(-5+3*v)"),
        provenance="Z/2xZ/6 family: Z/6 Tate model with c = (1-v^2)/(2(3v-5))",
    ),
    dict(
        id="Z7_REMARK", param="t", torsion="Z/7",
        A="1 - 2*t + 3*t^2 + 6*t^3 + t^4",
        B="-8*t^2*(1 + t)*(-1 + t + t^2)",
        C="16*t^4*(1 + t)^2",
        generator=("0", "4*t^2*(1 + t)"),
        provenance="general Z/7 model (torsion check only)",
    ),
]

for _i, (_x, _sub) in Z8_RANK1.items():
    ENTRIES.append(dict(
        id=f"Z8_R1_{_i}", param="w", torsion="Z/8", parent="Z8_BASE", sub=_sub,
        parent_points=[(f"x{_i}", _x, None)] if _x else [],
        provenance=f"Z/8 rank-one substitution v{_i}",
    ))

for _i, (_x, _sub) in Z26_RANK1.items():
    ENTRIES.append(dict(
        id=f"Z26_R1_{_i}", param="w", torsion="Z/2xZ/6", parent="Z26_BASE", sub=_sub,
        parent_points=[(f"x{_i}", _x, None)],
        provenance=f"Z/2xZ/6 rank-one substitution v{_i}",
    ))

ENTRIES += [
    dict(
        id="Z8_AA", param="w", torsion="Z/8", parent="Z8_BASE", sub=Z8_RANK1[3][1],
        A="-31 - 148*w^2 + 214*w^4 - 116*w^6 + 337*w^8",
        B="256*(-1 + w)^4*(1 + w)^4*(1 + 3*w^2)^4",
        parent_points=[("P", Z8_RANK1[3][0], None)],
        conditional=[
            ("x1", "(-1 + w)^2*(1 + w)^2*(5 + 7*w^2)^2*(11 + 25*w^2)/16", "(11 - u^2)/(10*u)", "u"),
            ("x2", "(-1 + w)^2*(1 + w)^2*(1 + 11*w^2)^2*(7 + 29*w^2)/(16*w^2)",
             "(29 - 12*u + u^2)/(-29 + u^2)", "u"),
        ],
        provenance="Z/8 rank-one family AA8 (substitution v3, cleared)",
    ),
    dict(
        id="Z8_R2_A", param="u", torsion="Z/8", parent="Z8_AA", sub="(11 - u^2)/(10*u)",
        A=("337*u^16 - 41256*u^14 + 4047356*u^12 - 288332632*u^10 + 2363813190*u^8"
           " - 34888248472*u^6 + 59257339196*u^4 - 73087520616*u^2 + 72238942897"),
        B="256*(363 + 34*u^2 + 3*u^4)^4*(11 + u)^4*(-11 + u)^4*(-1 + u)^4*(1 + u)^4",
        points=[
            ("X1", "2^12*5^2*(-11 + u)^2*(-1 + u)^2*u^2*(1 + u)^2*(11 + u)^2*(-11 + u^2)^2"
                   "*(363 + 34*u^2 + 3*u^4)^4/(102487 - 303468*u^2 + 43482*u^4 - 2508*u^6 + 7*u^8)^2", None),
            ("X2", "(-11 + u)^2*(-1 + u)^2*(1 + u)^2*(11 + u)^2*(11 + u^2)^2"
                   "*(847 + 346*u^2 + 7*u^4)^2/(64*u^2)", None),
        ],
        generator=("-8*(-11 + u)*(-1 + u)*(1 + u)*(11 + u)*(363 + 34*u^2 + 3*u^4)^3", None),
        provenance="first Z/8 rank-two family AAA8 (w1 into AA8)",
    ),
    dict(
        id="Z8_R2_B", param="u", torsion="Z/8", parent="Z8_AA", sub="(29 - 12*u + u^2)/(-29 + u^2)",
        A=("500246412961 - 2069985157080*u + 3162080774436*u^2 - 2895517882032*u^3"
           " + 1873181389706*u^4 - 906769167048*u^5 + 333391978480*u^6 - 93284915496*u^7"
           " + 19860033555*u^8 - 3216721224*u^9 + 396423280*u^10 - 37179432*u^11"
           " + 2648426*u^12 - 141168*u^13 + 5316*u^14 - 120*u^15 + u^16"),
        B="256*(-6 + u)^4*u^4*(-29 + 6*u)^4*(841 - 522*u + 137*u^2 - 18*u^3 + u^4)^4",
        points=[
            ("X1", "64*(-6 + u)^2*u^2*(-29 + 6*u)^2*(-29 + u^2)^2*(29 - 12*u + u^2)^2"
                   "*(841 - 522*u + 137*u^2 - 18*u^3 + u^4)^4/(707281 - 292668*u - 200158*u^2"
                   " + 168432*u^3 - 46685*u^4 + 5808*u^5 - 238*u^6 - 12*u^7 + u^8)^2", None),
            ("X2", "(-6 + u)^2*u^2*(-29 + 6*u)^2*(87 - 29*u + 3*u^2)^2"
                   "*(2523 - 1914*u + 541*u^2 - 66*u^3 + 3*u^4)^2/(4*(29 - 12*u + u^2)^2)", None),
        ],
        generator=("8*(-6 + u)*u*(-29 + 6*u)*(841 - 522*u + 137*u^2 - 18*u^3 + u^4)^3", None),
        provenance="second Z/8 rank-two family aaa8 (w2 into AA8)",
    ),
    dict(
        id="Z26_AA", param="w", torsion="Z/2xZ/6", parent="Z26_BASE", sub="3/(5 - w^2)",
        A="9472 - 7808*w^2 + 2688*w^4 - 488*w^6 + 37*w^8",
        B="32*(-8 + w^2)^3*(-5 + w^2)*(-2 + w^2)^3*(-16 + 5*w^2)",
        points=[
            ("P", "-(-5 + w^2)*(4 + w^2)^2*(-16 + 5*w^2)",
                  "27*(-2 + w)^2*w*(2 + w)^2*(-5 + w^2)*(4 + w^2)*(-16 + 5*w^2)"),
        ],
        generator=("8*(-8 + w^2)*(-5 + w^2)*(-2 + w^2)*(-16 + 5*w^2)",
                   "72*(-2 + w)^2*(2 + w)^2*(-8 + w^2)*(-5 + w^2)*(-2 + w^2)*(-16 + 5*w^2)"),
        conditional=[
            ("x1", "2*(-8 + w^2)^2*(-2 + w^2)^3", "2*(7 + u^2)/(-7 - 2*u + u^2)", "u"),
            ("x2", "(-8 + w^2)*(-5 + w^2)*(-16 + 5*w^2)*w^4", "(5 - 2*u + u^2)/(-5 + u^2)", "u"),
        ],
        provenance="Z/2xZ/6 rank-one family AA26 (substitution v8, cleared)",
    ),
    dict(
        id="Z26_R2_A", param="u", torsion="Z/2xZ/6", parent="Z26_AA", sub="2*(7 + u^2)/(-7 - 2*u + u^2)",
        A=("-2*(5764801 + 6588344*u - 21647416*u^2 + 29445864*u^3 - 9604*u^4 + 27969592*u^5"
           " - 44631944*u^6 + 9779112*u^7 + 5909830*u^8 - 1397016*u^9 - 910856*u^10"
           " - 81544*u^11 - 4*u^12 - 1752*u^13 - 184*u^14 - 8*u^15 + u^16)"),
        B=("(-7 - 10*u + u^2)^3*(-7 + 2*u + u^2)^3*(49 + 140*u - 106*u^2 - 20*u^3 + u^4)"
           "*(49 - 28*u + 38*u^2 + 4*u^3 + u^4)^3*(49 - 112*u + 110*u^2 + 16*u^3 + u^4)"),
        points=[
            ("X1", "(49 + 140*u - 106*u^2 - 20*u^3 + u^4)*(49 + 14*u + 2*u^2 - 2*u^3 + u^4)^2"
                   "*(49 - 112*u + 110*u^2 + 16*u^3 + u^4)", None),
            ("X2", "(-7 - 10*u + u^2)^2*(-7 + 2*u + u^2)^2*(49 - 28*u + 38*u^2 + 4*u^3 + u^4)^3"
                   "/(-7 - 2*u + u^2)^2", None),
        ],
        generator=("(-7 - 10*u + u^2)*(-7 + 2*u + u^2)*(49 + 140*u - 106*u^2 - 20*u^3 + u^4)"
                   "*(49 - 28*u + 38*u^2 + 4*u^3 + u^4)*(49 - 112*u + 110*u^2 + 16*u^3 + u^4)", None),
        provenance="first Z/2xZ/6 rank-two family AAA26 (w1 into AA26)",
    ),
    dict(
        id="Z26_R2_B", param="u", torsion="Z/2xZ/6", parent="Z26_AA", sub="(5 - 2*u + u^2)/(-5 + u^2)",
        A=("1523828125 + 1171250000*u - 3482125000*u^2 - 1970850000*u^3 + 3530367500*u^4"
           " + 1221154000*u^5 - 2018502200*u^6 - 238418640*u^7 + 632792782*u^8 - 47683728*u^9"
           " - 80740088*u^10 + 9769232*u^11 + 5648588*u^12 - 630672*u^13 - 222856*u^14"
           " + 14992*u^15 + 3901*u^16"),
        B=("128*(-7 + 2*u + u^2)^3*(-25 - 10*u + 7*u^2)^3*(25 + 5*u - 16*u^2 + u^3 + u^4)"
           "*(25 + 20*u - 34*u^2 + 4*u^3 + u^4)^3*(275 + 100*u - 230*u^2 + 20*u^3 + 11*u^4)"),
        points=[
            ("X1", "-4*(25 + 5*u - 16*u^2 + u^3 + u^4)*(125 - 20*u - 26*u^2 - 4*u^3 + 5*u^4)^2"
                   "*(275 + 100*u - 230*u^2 + 20*u^3 + 11*u^4)", None),
            ("X2", "-4*(5 - 2*u + u^2)^4*(-7 + 2*u + u^2)*(-25 - 10*u + 7*u^2)/(-5 + u^2)^2"
                   "*(25 + 5*u - 16*u^2 + u^3 + u^4)*(275 + 100*u - 230*u^2 + 20*u^3 + 11*u^4)", None),
        ],
        generator=("32*(-7 + 2*u + u^2)*(-25 - 10*u + 7*u^2)*(25 + 5*u - 16*u^2 + u^3 + u^4)"
                   "*(25 + 20*u - 34*u^2 + 4*u^3 + u^4)*(275 + 100*u - 230*u^2 + 20*u^3 + 11*u^4)", None),
        provenance="second Z/2xZ/6 rank-two family aaa26 (w2 into AA26)",
    ),
    dict(
        id="Z6_HADANO", param="v", torsion="Z/6",
        A=HADANO_A, B=HADANO_B,
        points=[("P", HADANO_P[0], HADANO_P[1])],
        generator=HADANO_T,
        provenance="Hadano Z/6 model with a forced point, restricted to a = v + 1",
    ),
    dict(
        id="Z26_HADANO_R1", param="w", torsion="Z/2xZ/6", parent="Z6_HADANO", sub="(1 - w^2)/(-3 + 2*w)",
        A=("2*(-24 - 216*w + 1008*w^2 - 1596*w^3 + 1319*w^4 - 648*w^5 + 198*w^6"
           " - 36*w^7 + 3*w^8)"),
        B="(-4 + w)^3*(-3 + w)*(-2 + w)^3*(-1 + w)^3*w*(1 + w)^3*(-7 + 3*w)*(-2 + 3*w)",
        points=[
            ("X", "-(-4 + w)^3*(-2 + w)^3*(-1 + w)^2*w*(1 + w)^2*(-2 + 3*w)/(2 - 2*w + w^2)^2", None),
        ],
        conditional=[
            ("xn", "(-4 + w)*(-3 + w)*(-1 + w)^3*(1 + w)^2*(-7 + 3*w)", "-(9 + 4*u)/(-3 + u^2)", "u"),
        ],
        provenance="Z/2xZ/6 rank-one family a26 from the Hadano chain",
    ),
    dict(
        id="Z26_R2_C", param="u", torsion="Z/2xZ/6", parent="Z26_HADANO_R1", sub="-(9 + 4*u)/(-3 + u^2)",
        A=("-2*(157464 - 1889568*u - 13594392*u^2 - 38047968*u^3 - 62500248*u^4"
           " - 69622416*u^5 - 57719412*u^6 - 38941344*u^7 - 23353995*u^8 - 12980448*u^9"
           " - 6413268*u^10 - 2578608*u^11 - 771608*u^12 - 156576*u^13 - 18648*u^14"
           " - 864*u^15 + 24*u^16)"),
        B=("-(-6 + u)^3*u*(2 + u)^3*(-1 + 2*u)^3*(3 + 2*u)^3*(4 + 3*u)*(9 + 4*u)"
           "*(6 + 4*u + u^2)^3*(3 + 4*u + 2*u^2)^3*(21 + 12*u + 2*u^2)*(6 + 12*u + 7*u^2)"),
        points=[
            ("X1", "(-6 + u)^2*u*(2 + u)^2*(-1 + 2*u)*(3 + 2*u)*(4 + 3*u)*(6 + 4*u + u^2)^3"
                   "*(6 + 12*u + 7*u^2)", None),
            ("X2", "-(-6 + u)^2*(2 + u)^2*(-1 + 2*u)^3*(3 + 2*u)^3*(9 + 4*u)"
                   "/(45 + 48*u + 22*u^2 + 8*u^3 + 2*u^4)^2*(6 + 4*u + u^2)^2"
                   "*(3 + 4*u + 2*u^2)^3*(21 + 12*u + 2*u^2)", None),
        ],
        provenance="third Z/2xZ/6 rank-two family A263 from the Hadano chain",
    ),
]

# Square conditions that drive the constructions: (id, expression, variable,
# successive substitutions that should turn it into a square).
MECHANISMS = [
    ("z26_two_torsion_split", "(1 + c)^3*(1 + 9*c)", "c", [("(-v^2 + 1)/(2*(3*v - 5))", "v")]),
    ("z26_v8_condition", "v*(-3 + 5*v)", "v", [("3/(5 - w^2)", "w")]),
    ("z26_w1_condition", "2*w^2 - 7", "w", [("2*(7 + u^2)/(-7 - 2*u + u^2)", "u")]),
    ("z26_w2_condition", "5*w^2 - 4", "w", [("(5 - 2*u + u^2)/(-5 + u^2)", "u")]),
    ("hadano_full_two_torsion", "(v+1)*(-(v+1) + (v+1)^3 - v)*(-1 + (v+1)^2 - (v+1)*v + v^2)", "v",
     [("(1 - w^2)/(-3 + 2*w)", "w")]),
    ("hadano_second_point", "4 - 9*w + 3*w^2", "w", [("-(9 + 4*u)/(-3 + u^2)", "u")]),
]
