import courant


def test_exterior_calculus_basics():
    c = courant.Chart(["x", "y", "z"])
    dx = courant.DifferentialForm(c, 1, [(["x"], "1")])
    assert courant.wedge(dx, dx).is_zero()
    w = courant.DifferentialForm(c, 1, [(["y"], "x*y"), (["z"], "x^2")])
    assert courant.ext_d(courant.ext_d(w)).is_zero()
    X = courant.VectorField(c, ["1", "0", "0"])
    Zz = courant.VectorField(c, ["0", "2*x", "1"])
    assert courant.lie_bracket(X, Zz) == courant.VectorField(c, ["0", "2", "0"])


def test_dorfman_and_axioms():
    c = courant.Chart(["x", "y", "z"])
    H = courant.DifferentialForm(c, 3, [(["x", "y", "z"], "5")])
    E = courant.TwistedCourant(c, H)
    zero1 = courant.DifferentialForm(c, 1, [])
    e1 = courant.GeneralizedSection(courant.VectorField(c, ["1", "0", "0"]), zero1)
    e2 = courant.GeneralizedSection(courant.VectorField(c, ["0", "1", "0"]), zero1)
    br = courant.dorfman(E, e1, e2)
    assert br.vec().is_zero()
    assert br.form() == courant.DifferentialForm(c, 1, [(["z"], "5")])
    ok, samples, failures = courant.courant_axioms_check(E, samples=30, seed=3)
    assert ok and samples == 30 and failures == 0


def test_heisenberg_pipeline_via_documents():
    doc = courant.example("heisenberg", m=2)
    report = courant.run("tdualize", doc)
    assert report["pass"] is True
    assert report["outputs"]["g2_frame"][0][0] == "1"
    assert report["outputs"]["H2_reduced"][0]["coeff"] == "2"
    assert report["outputs"]["b2_frame"][0][1] == "0"


def test_lens_gate_and_para_route():
    good = courant.run("tdualize", courant.example("lens", m=1, k=1, n=1))
    assert good["pass"] is True
    bad = courant.run("tdualize", courant.example("lens", m=1, k=1, n=0))
    assert bad["pass"] is False
    para = courant.run("para-check", courant.example("circle", R2="9/4"))
    assert para["pass"] is True
    assert para["outputs"]["g2_plus"][0][0] == "4/9"
