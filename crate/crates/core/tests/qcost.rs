//! Bound values checked against an independent 50-digit evaluation of the
//! same closed forms.

use approx::assert_relative_eq;
use qlouvain::error::Error;
use qlouvain::qcost::{ceil_log2, findfirst_zeta, CostParams, ALPHA, F_PLATEAU};

fn p() -> CostParams {
    CostParams::default()
}

#[test]
fn defaults() {
    let p = p();
    assert_eq!(
        (p.alpha, p.cq, p.eps_total, p.lswitch, p.nsamples_init),
        (9.2, 2.0, 1e-5, 512, 130)
    );
    assert_eq!(ALPHA, 9.2);
}

#[test]
fn f_factor_values() {
    let p = p();
    assert_relative_eq!(
        p.f_factor(1000, 1).unwrap(),
        84.186849681437,
        max_relative = 1e-12
    );
    for (l, t) in [(4, 1), (100, 25), (1000, 250), (1000, 1000), (7, 2)] {
        assert_eq!(p.f_factor(l, t).unwrap(), F_PLATEAU, "L={l} t={t}");
    }
    assert!(p.f_factor(1000, 249).unwrap() > F_PLATEAU);
}

#[test]
fn f_factor_stays_below_search_bound() {
    let p = p();
    for k in 3..=20u32 {
        let l = 1u64 << k;
        let mut ts: Vec<u64> = (1..(l / 4).min(2000)).collect();
        ts.extend([l / 4 - 1, l / 8, l / 16]);
        for t in ts.into_iter().filter(|&t| t >= 1 && 4 * t < l) {
            let f = p.f_factor(l, t).unwrap();
            assert!(
                f <= ALPHA * (l as f64).sqrt() / (3.0 * (t as f64).sqrt()),
                "L={l} t={t}"
            );
        }
    }
}

#[test]
fn grover_values() {
    let p = p();
    assert_relative_eq!(
        p.q_grover(100, 25).unwrap(),
        4.114804065553945,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        p.q_grover(1000, 1).unwrap(),
        202.65508307721558,
        max_relative = 1e-12
    );
}

#[test]
fn qsearch_values() {
    let p = p();
    assert_relative_eq!(
        p.w_qsearch(100, 0, 1.0 / 3.0).unwrap(),
        184.0,
        epsilon = 1e-9
    );
    assert_relative_eq!(
        p.w_qsearch(1, 130, 1.0 / 3.0).unwrap(),
        148.4,
        epsilon = 1e-9
    );
    assert_relative_eq!(
        p.e_qsearch(1000, 10, 0, 5e-4).unwrap(),
        120.69567026761172,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        p.e_qsearch(1000, 10, 130, 5e-4).unwrap(),
        105.60344087841161,
        max_relative = 1e-12
    );
    for l in [1u64, 7, 100, 5000] {
        assert_eq!(p.e_qsearch(l, l, 1, 1e-3).unwrap(), 1.0);
    }
    assert_eq!(p.e_qsearch(100, 0, 0, 1.0 / 3.0).unwrap(), 184.0);
}

#[test]
fn qsearch_breakdown_splits() {
    let p = p();
    let b = p.e_qsearch_breakdown(1000, 10, 130, 5e-4).unwrap();
    assert_relative_eq!(b.classical + b.quantum, b.queries);
    assert!(b.classical > 0.0 && b.quantum > 0.0);
    let z = p.e_qsearch_breakdown(1000, 0, 130, 5e-4).unwrap();
    assert_eq!(z.classical, 130.0);
}

#[test]
fn zalka_and_max_values() {
    let p = p();
    assert_relative_eq!(
        p.w_zalka(1, 0.5).unwrap(),
        28.885765876316732,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        p.w_zalka(10_000, 1e-6).unwrap(),
        3391.5926535897932,
        max_relative = 1e-12
    );
    assert_relative_eq!(p.e_qmax(2, 1.0 / 3.0).unwrap(), 6.1032, epsilon = 1e-9);
    assert_relative_eq!(
        p.e_qmax(10, 1e-3).unwrap(),
        315.8663066666667,
        max_relative = 1e-12
    );
}

#[test]
fn vertexfind_values() {
    let p = p();
    assert_relative_eq!(
        p.e_vertexfind(1000, 10, 0, 1e-3, 20).unwrap(),
        103481.40256709646,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        p.e_vertexfind(1000, 10, 130, 1e-3, 20).unwrap(),
        90541.7083626899,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        p.e_vertexfind(64, 64, 1, 1e-2, 7).unwrap(),
        572.3591465956743,
        max_relative = 1e-12
    );
    assert_eq!(p.e_vertexfind_sg(100, 0, 0, 1.0 / 3.0, 5).unwrap(), 1840.0);
    assert_eq!(p.e_vertexfind_sg(50, 50, 1, 1e-3, 9).unwrap(), 18.0);
}

#[test]
fn vertexfind_is_outer_times_inner() {
    let p = p();
    for (l, t, ns, z, d) in [
        (1000u64, 10u64, 0u32, 1e-3, 20usize),
        (500, 3, 130, 1e-6, 4),
        (80, 0, 0, 1e-4, 11),
    ] {
        let outer = p.e_qsearch(l, t, ns, z / 2.0).unwrap();
        let calls = p.w_qsearch(l, ns, z / 2.0).unwrap();
        let inner = 2.0 * p.w_zalka(d as u64, z / (2.0 * calls)).unwrap();
        assert_relative_eq!(
            p.e_vertexfind(l, t, ns, z, d).unwrap(),
            outer * inner,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            p.vertexfind_inner(l, ns, z, d).unwrap(),
            inner,
            max_relative = 1e-14
        );
        let sg = p.e_vertexfind_sg(l, t, ns, z, d).unwrap();
        assert_relative_eq!(
            sg,
            p.e_qsearch(l, t, ns, z).unwrap() * 2.0 * d as f64,
            max_relative = 1e-14
        );
    }
}

#[test]
fn budget_values() {
    let p = p();
    assert_relative_eq!(
        p.epsilon_budget(1000).unwrap(),
        1.4476482730108394e-9,
        max_relative = 1e-12
    );
    assert_relative_eq!(p.move_budget(1000), 1000.0 * 1000f64.ln());
    let p2 = CostParams {
        log_base: 2.0,
        ..CostParams::default()
    };
    assert_relative_eq!(p2.move_budget(1024), 10240.0, max_relative = 1e-14);
    assert!(p.epsilon_budget(1).is_err());
}

#[test]
fn findfirst_budget() {
    assert_eq!(ceil_log2(1), 0);
    assert_eq!(ceil_log2(1024), 10);
    assert_eq!(ceil_log2(1025), 11);
    assert_eq!(findfirst_zeta(1e-3, 1024).unwrap(), 1e-3 / 20.0);
}

#[test]
fn domain_errors() {
    let p = p();
    assert!(matches!(p.f_factor(10, 0), Err(Error::Domain { .. })));
    assert!(matches!(
        p.e_qsearch(10, 11, 0, 0.1),
        Err(Error::Domain { .. })
    ));
    assert!(matches!(p.w_qsearch(10, 0, 0.0), Err(Error::Domain { .. })));
    assert!(matches!(p.w_zalka(10, 1.0), Err(Error::Domain { .. })));
    assert!(matches!(p.e_qmax(0, 0.1), Err(Error::Domain { .. })));
    assert!(matches!(
        p.e_vertexfind(10, 1, 0, 1.5, 3),
        Err(Error::Domain { .. })
    ));
    assert!(findfirst_zeta(0.1, 0).is_err());
}

#[test]
fn more_marked_never_costs_more_grover() {
    let p = p();
    let mut last = f64::INFINITY;
    for t in 1..=250u64 {
        let q = p.e_qsearch(1000, t, 0, 1e-6).unwrap();
        assert!(q <= last + 1e-9, "t={t}");
        last = q;
    }
}
