//! End-to-end acceptance suite. Each numbered criterion prints one
//! pass/fail line; the test fails if any criterion fails.

use std::time::Instant;

use witt_core::bezout;
use witt_core::elem::FieldElement;
use witt_core::field::{BaseCtx, FieldDescriptor, FqDescriptor};
use witt_core::forms::{self, DiagonalForm};
use witt_core::funcfield;
use witt_core::gersten::{self, LineBundleClass, Sheaf};
use witt_core::intarith::{hilbert_symbol, QPlace};
use witt_core::poly::Poly;
use witt_core::residue::{self, AxiomScenario, Sampler};
use witt_core::units;
use witt_core::witt::{boxplus, boxplus_inverse, TorsionLevelElement, WittClass, WittRingTable};

fn q() -> FieldDescriptor {
    FieldDescriptor::Rationals
}

fn qp(p: u64) -> FieldDescriptor {
    FieldDescriptor::PadicField(p)
}

fn f5() -> FieldDescriptor {
    FieldDescriptor::FiniteField(FqDescriptor::prime(5))
}

fn r() -> FieldDescriptor {
    FieldDescriptor::RealClosed
}

type Check = Result<(), String>;

fn c01_finite_witt_rings() -> Check {
    for p in [3u64, 5, 7] {
        let field = qp(p);
        let table = WittRingTable::build(&field).map_err(|e| e.to_string())?;
        if table.len() != 16 {
            return Err(format!("|W(Q_{})| = {}, expected 16", p, table.len()));
        }
        let units = table.unit_indices().map_err(|e| e.to_string())?;
        if units.len() != 8 {
            return Err(format!("unit count {} over Q_{}, expected 8", units.len(), p));
        }
        let classes = witt_core::elem::square_classes(&field)
            .map_err(|e| e.to_string())?
            .map(|v| v.len())
            .unwrap_or(0);
        if classes != 4 {
            return Err(format!("{} square classes over Q_{}, expected 4", classes, p));
        }
        let report = units::verify_pushout_square(&field).map_err(|e| e.to_string())?;
        if report.quotient_order != 2 {
            return Err(format!(
                "unit quotient order {} over Q_{}, expected 2",
                report.quotient_order, p
            ));
        }
    }
    Ok(())
}

fn c02_quaternion_unit() -> Check {
    // (3, 3)_3 = -1: the quaternion class 1 (+) <1,-3,-3,9> over Q_3.
    let p = 3u64;
    let a = num_rational::BigRational::from_integer(3.into());
    if hilbert_symbol(QPlace::Prime(p), &a, &a).map_err(|e| e.to_string())? != -1 {
        return Err("expected (3,3)_3 = -1".to_string());
    }
    let field = qp(p);
    let form = DiagonalForm::from_ints(&field, &[1, 1, -3, -3, 9]).map_err(|e| e.to_string())?;
    let x = WittClass::from_form(&form).map_err(|e| e.to_string())?;
    if !units::is_unit(&x).map_err(|e| e.to_string())? {
        return Err("quaternion class is not a unit".to_string());
    }
    let inv = forms::invariants(&form).map_err(|e| e.to_string())?;
    if !witt_core::elem::is_square(&field, &inv.det.representative).map_err(|e| e.to_string())? {
        return Err("determinant square class is not 1".to_string());
    }
    // Hasse invariant must be -(-1,-1)_3 = -1.
    let minus_one = num_rational::BigRational::from_integer((-1).into());
    let expected = -hilbert_symbol(QPlace::Prime(p), &minus_one, &minus_one)
        .map_err(|e| e.to_string())?;
    let got = inv
        .hasse
        .iter()
        .find(|(place, _)| matches!(place, QPlace::Prime(3)))
        .map(|(_, e)| *e)
        .ok_or("no Hasse invariant at 3")?;
    if got != expected {
        return Err(format!("Hasse invariant {}, expected {}", got, expected));
    }
    if units::represented_by_square_class(&x)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return Err("quaternion unit should not be a square class".to_string());
    }
    Ok(())
}

fn torsion_pool(field: &FieldDescriptor) -> Result<Vec<WittClass>, String> {
    match field {
        FieldDescriptor::Rationals => {
            let mut out = vec![WittClass::zero(field)];
            for entries in [&[1i64, -3][..], &[1, -7], &[2, -3], &[1, 1, -3, -3], &[2, -7]] {
                let f = DiagonalForm::from_ints(field, entries).map_err(|e| e.to_string())?;
                out.push(WittClass::from_form(&f).map_err(|e| e.to_string())?);
            }
            Ok(out)
        }
        _ => Ok(WittRingTable::build(field).map_err(|e| e.to_string())?.elems),
    }
}

fn c03_boxplus_groups() -> Check {
    let mut rng = Sampler::new(0xB0C5);
    for field in [qp(3), qp(5), f5(), q()] {
        let pool = torsion_pool(&field)?;
        for level in [1u32, 2, 3] {
            let zero = TorsionLevelElement::new(level, WittClass::zero(&field))
                .map_err(|e| e.to_string())?;
            for _ in 0..1000 {
                let pick = |rng: &mut Sampler| {
                    TorsionLevelElement::new(level, pool[rng.below(pool.len())].clone())
                };
                let a = pick(&mut rng).map_err(|e| e.to_string())?;
                let b = pick(&mut rng).map_err(|e| e.to_string())?;
                let c = pick(&mut rng).map_err(|e| e.to_string())?;
                let ab = boxplus(&a, &b).map_err(|e| e.to_string())?;
                let ba = boxplus(&b, &a).map_err(|e| e.to_string())?;
                if ab.value != ba.value {
                    return Err(format!("commutativity failed over {}", field.name()));
                }
                let abc1 = boxplus(&ab, &c).map_err(|e| e.to_string())?;
                let bc = boxplus(&b, &c).map_err(|e| e.to_string())?;
                let abc2 = boxplus(&a, &bc).map_err(|e| e.to_string())?;
                if abc1.value != abc2.value {
                    return Err(format!("associativity failed over {}", field.name()));
                }
                if boxplus(&a, &zero).map_err(|e| e.to_string())?.value != a.value {
                    return Err(format!("identity failed over {}", field.name()));
                }
                let inv = boxplus_inverse(&a).map_err(|e| e.to_string())?;
                if !boxplus(&a, &inv).map_err(|e| e.to_string())?.value.is_zero() {
                    return Err(format!(
                        "inverse formula failed over {} at level {}",
                        field.name(),
                        level
                    ));
                }
            }
        }
    }
    Ok(())
}

fn c04_residue_homomorphism() -> Check {
    let mut rng = Sampler::new(0x0404);
    for base in [qp(3), f5()] {
        let field = funcfield::function_field(&base);
        let t = funcfield::t_element(&base).map_err(|e| e.to_string())?;
        let pool = torsion_pool(&base)?;
        for _ in 0..500 {
            let a = &pool[rng.below(pool.len())];
            let b = &pool[rng.below(pool.len())];
            let ga = funcfield::one_plus_uniformizer_twist(&field, &t, &a.rep)
                .map_err(|e| e.to_string())?;
            let gb = funcfield::one_plus_uniformizer_twist(&field, &t, &b.rep)
                .map_err(|e| e.to_string())?;
            let prod = ga.tensor(&gb).map_err(|e| e.to_string())?;
            let ea = TorsionLevelElement::new(1, a.clone()).map_err(|e| e.to_string())?;
            let eb = TorsionLevelElement::new(1, b.clone()).map_err(|e| e.to_string())?;
            let sum = boxplus(&ea, &eb).map_err(|e| e.to_string())?;
            let expected = funcfield::one_plus_uniformizer_twist(&field, &t, &sum.value.rep)
                .map_err(|e| e.to_string())?;
            if !residue::witt_eq_func(&prod, &expected).map_err(|e| e.to_string())? {
                return Err(format!(
                    "twist product identity failed over {} for a={}, b={}",
                    field.name(),
                    a.rep.render(),
                    b.rep.render()
                ));
            }
        }
    }
    Ok(())
}

fn c05_milnor_sequence() -> Check {
    let base = qp(3);
    let field = funcfield::function_field(&base);
    let ctx = BaseCtx::for_field(&base).map_err(|e| e.to_string())?;
    let table = WittRingTable::build(&base).map_err(|e| e.to_string())?;
    let places: Vec<Poly> = (0..3)
        .map(|r| Poly::from_coeffs(vec![ctx.from_int(-r), ctx.one()]))
        .collect();
    // All target tuples over the 3-place support, round-tripped exactly.
    for i in 0..table.len() {
        for j in 0..table.len() {
            for k in 0..table.len() {
                let targets = vec![
                    (places[0].clone(), table.elems[i].clone()),
                    (places[1].clone(), table.elems[j].clone()),
                    (places[2].clone(), table.elems[k].clone()),
                ];
                let lifted = residue::milnor_lift(&field, &targets).map_err(|e| e.to_string())?;
                let back = residue::milnor_total_residue(&lifted).map_err(|e| e.to_string())?;
                for (pi, w) in &targets {
                    let got = back
                        .iter()
                        .find(|(p, _)| p == pi)
                        .map(|(_, w)| w.clone())
                        .unwrap_or_else(|| WittClass::zero(&base));
                    if &got != w {
                        return Err(format!(
                            "round trip failed at ({}) for targets ({}, {}, {})",
                            pi.render(),
                            i,
                            j,
                            k
                        ));
                    }
                }
            }
        }
    }
    // Sampled kernel members are constants.
    let mut rng = Sampler::new(0x0505);
    for _ in 0..500 {
        let c = &table.elems[rng.below(table.len())];
        let noise_targets: Vec<(Poly, WittClass)> = places
            .iter()
            .map(|p| (p.clone(), table.elems[rng.below(table.len())].clone()))
            .collect();
        let noise = residue::milnor_lift(&field, &noise_targets).map_err(|e| e.to_string())?;
        let x = funcfield::lift_form(&field, &c.rep)
            .map_err(|e| e.to_string())?
            .direct_sum(&noise)
            .map_err(|e| e.to_string())?
            .direct_sum(&noise.neg().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if !residue::milnor_total_residue(&x).map_err(|e| e.to_string())?.is_empty() {
            return Err("kernel member has a residue".to_string());
        }
        let constant = funcfield::lift_form(&field, &c.rep).map_err(|e| e.to_string())?;
        if !residue::witt_eq_func(&x, &constant).map_err(|e| e.to_string())? {
            return Err("kernel member is not a constant class".to_string());
        }
    }
    Ok(())
}

fn c06_units_residue_sequence() -> Check {
    for base in [qp(3), r()] {
        let ctx = BaseCtx::for_field(&base).map_err(|e| e.to_string())?;
        let support = vec![Poly::t(&ctx), Poly::from_ints(&ctx, &[-1, 1])];
        let report = residue::units_residue_sequence_check(&base, &support)
            .map_err(|e| e.to_string())?;
        if !(report.injectivity_ok && report.surjectivity_ok && report.exactness_ok) {
            return Err(format!(
                "sequence check over {}: injectivity {}, surjectivity {}, exactness {}",
                base.name(),
                report.injectivity_ok,
                report.surjectivity_ok,
                report.exactness_ok
            ));
        }
    }
    Ok(())
}

fn c07_gersten_diagram() -> Check {
    let base = qp(3);
    let ctx = BaseCtx::for_field(&base).map_err(|e| e.to_string())?;
    let support = vec![
        gersten::SupportPoint::Finite(Poly::t(&ctx)),
        gersten::SupportPoint::Finite(Poly::from_ints(&ctx, &[-1, 1])),
    ];
    let complex = gersten::build_complex(
        &base,
        gersten::Scheme::ProjectiveLine,
        Sheaf::GWUnits,
        &support,
    )
    .map_err(|e| e.to_string())?;
    let d2 = gersten::check_d_squared(&complex, 25, 0x0707).map_err(|e| e.to_string())?;
    if !d2.ok {
        return Err("d-squared support containment failed".to_string());
    }
    let diagram = gersten::exact_diagram_check(&base, &support, 0x0707).map_err(|e| e.to_string())?;
    if !diagram.degree0_exact {
        return Err("degree 0 row exactness failed".to_string());
    }
    if !diagram.degree1_exact {
        return Err("degree 1 row exactness failed".to_string());
    }
    if !diagram.squares_commute {
        return Err("diagram squares do not commute".to_string());
    }
    Ok(())
}

fn c08_h1_p1() -> Check {
    let rr = gersten::h1_p1(&r(), &Sheaf::GWUnits).map_err(|e| e.to_string())?;
    if rr.cardinality != 2 || !rr.stabilized {
        return Err(format!("H^1 over R: {} (stabilized {})", rr.cardinality, rr.stabilized));
    }
    if gersten::line_bundle_image_trivial(&LineBundleClass::new(-1)) {
        return Err("O(-1) should generate H^1 over R".to_string());
    }
    if !gersten::line_bundle_image_trivial(&LineBundleClass::tangent_p1()) {
        return Err("O(-2) should die in H^1".to_string());
    }
    let gw = gersten::h1_p1(&qp(3), &Sheaf::GWUnits).map_err(|e| e.to_string())?;
    let nq = gersten::h1_p1(&qp(3), &Sheaf::NQ).map_err(|e| e.to_string())?;
    let pic = gersten::h1_p1(&qp(3), &Sheaf::SquareClasses).map_err(|e| e.to_string())?;
    if gw.cardinality != 16 || !gw.stabilized {
        return Err(format!("H^1 over Q_3: {} (stabilized {})", gw.cardinality, gw.stabilized));
    }
    if pic.cardinality * nq.cardinality != gw.cardinality {
        return Err(format!(
            "two-way count failed: {} * {} != {}",
            pic.cardinality, nq.cardinality, gw.cardinality
        ));
    }
    Ok(())
}

fn c09_orientation() -> Check {
    for n in 1..=4i64 {
        let (over_r, _) = gersten::is_orientable_st(n, &r()).map_err(|e| e.to_string())?;
        if over_r != (n % 2 == 1) {
            return Err(format!("ST({}) over R: got {}, expected {}", n, over_r, n % 2 == 1));
        }
        for base in [f5(), FieldDescriptor::SquareClosed] {
            let (ok, _) = gersten::is_orientable_st(n, &base).map_err(|e| e.to_string())?;
            if !ok {
                return Err(format!("ST({}) over {} should be orientable", n, base.name()));
            }
        }
    }
    Ok(())
}

fn c10_bezout_and_clutching() -> Check {
    let mut rng = Sampler::new(0x0A0A);
    for field in [q(), f5()] {
        for _ in 0..50 {
            let pick = |rng: &mut Sampler| -> i64 {
                match &field {
                    FieldDescriptor::FiniteField(_) => 1 + rng.below(4) as i64,
                    _ => {
                        let pool = [1i64, -1, 2, -2, 3, 5, -5, 7];
                        pool[rng.below(pool.len())]
                    }
                }
            };
            let (a1, a2, a3) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let fam = bezout::family_from_form(
                &field,
                &FieldElement::from_int(a1),
                &FieldElement::from_int(a2),
                &FieldElement::from_int(a3),
            )
            .map_err(|e| e.to_string())?;
            let class = bezout::bezout_gw_class(&fam).map_err(|e| e.to_string())?;
            let target = witt_core::witt::GwClass::from_form(
                &DiagonalForm::from_ints(&field, &[a1, a2, a3]).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            if class != target {
                return Err(format!(
                    "Bezout mismatch for ({}, {}, {}) over {}",
                    a1,
                    a2,
                    a3,
                    field.name()
                ));
            }
        }
    }
    // T-family over Q_3 with the nonsquare unit 2.
    let base = qp(3);
    let field = funcfield::function_field(&base);
    let u = FieldElement::from_int(2);
    let fam = bezout::t_family(&base, &u).map_err(|e| e.to_string())?;
    let form = bezout::bezout_form(&fam).map_err(|e| e.to_string())?;
    let t = funcfield::t_element(&base).map_err(|e| e.to_string())?;
    let tu = witt_core::elem::mul_elements(&field, &t, &u).map_err(|e| e.to_string())?;
    let target = DiagonalForm::new(
        field.clone(),
        vec![FieldElement::from_int(1), tu, u.clone()],
    )
    .map_err(|e| e.to_string())?;
    if !residue::witt_eq_func(&form, &target).map_err(|e| e.to_string())? {
        return Err("T-family Bezout form mismatch".to_string());
    }
    let class = bezout::clutching_class(&form).map_err(|e| e.to_string())?;
    if !class.nontrivial {
        return Err("T-family clutching class should be nontrivial for nonsquare u".to_string());
    }
    Ok(())
}

fn c11_axioms() -> Check {
    let scenarios = [
        AxiomScenario::ConstantExtension { base: qp(3), point: 0 },
        AxiomScenario::Completion { p: 3 },
    ];
    for scenario in scenarios {
        let report = residue::axiom_checks(&scenario, 200, 0x0B0B).map_err(|e| e.to_string())?;
        if !(report.a1_ok && report.a2_ok && report.a3_ok) {
            return Err(format!(
                "axiom checks failed: A1 {}, A2 {}, A3 {}",
                report.a1_ok, report.a2_ok, report.a3_ok
            ));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("01 finite-witt-rings", c01_finite_witt_rings),
        ("02 quaternion-unit", c02_quaternion_unit),
        ("03 boxplus-groups", c03_boxplus_groups),
        ("04 residue-homomorphism", c04_residue_homomorphism),
        ("05 milnor-sequence", c05_milnor_sequence),
        ("06 units-residue-sequence", c06_units_residue_sequence),
        ("07 gersten-diagram", c07_gersten_diagram),
        ("08 h1-projective-line", c08_h1_p1),
        ("09 orientation", c09_orientation),
        ("10 bezout-clutching", c10_bezout_and_clutching),
        ("11 axiom-suites", c11_axioms),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed().as_secs_f64();
        match &result {
            Ok(()) => println!("[PASS] {} ({:.2}s)", name, elapsed),
            Err(msg) => {
                println!("[FAIL] {} ({:.2}s): {}", name, elapsed, msg);
                failed.push(format!("{}: {}", name, msg));
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
