import math

from hypothesis import strategies as st

from bsquad.params import validate_family, validate_pair

eps = st.integers(0, 1)
real_alpha = st.floats(-0.8, 0.8).filter(lambda x: abs(x) > 1e-3)


@st.composite
def alpha_lists(draw, max_d=4):
    out = []
    d = draw(st.integers(0, max_d))
    while len(out) < d:
        if d - len(out) >= 2 and draw(st.booleans()):
            r = draw(st.floats(0.01, 0.8))
            th = draw(st.floats(0.05, math.pi - 0.05))
            re, im = r * math.cos(th), r * math.sin(th)
            out += [[re, im], [re, -im]]
        else:
            out.append(draw(real_alpha))
    return out


@st.composite
def families(draw, max_d=4):
    return validate_family(draw(eps), draw(eps), draw(alpha_lists(max_d)))


@st.composite
def configs(draw, max_d=4, max_m=16):
    fam, fam_t = draw(families(max_d)), draw(families(max_d))
    low = max(fam.ceil_d_eps + fam_t.ceil_d_eps + 1, 1)
    return validate_pair(fam, fam_t, draw(st.integers(low, max(low, max_m))))
