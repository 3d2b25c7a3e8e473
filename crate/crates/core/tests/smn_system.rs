//! Verification of the `O_{q,p}(S_mn)` Hopf-Galois system, including
//! the Galois-map inverse identities, plus its nonzero-ness evidence.

use hgw_core::findim::{
    build_smn_system, smn_nonzero_evidence, tensor_representation_check, ASTMatrix,
    TensorRepTarget, XConvention,
};
use hgw_core::hg::{verify_system, CheckVerdict};
use hgw_core::ncalg::ReductionContext;

#[test]
fn prop24_system_verifies_at_cap_3() {
    let p = ASTMatrix::from_upper_triangle(2, 2, &[1]);
    let sys = build_smn_system(&p, &p);
    let ctx = ReductionContext::new(500_000);
    let report = verify_system(&ctx, &sys, 3, Some(2));
    for c in &report.checks {
        assert!(
            matches!(c.verdict, CheckVerdict::Verified),
            "{}: {:?}",
            c.name,
            c.verdict
        );
    }
}

#[test]
fn oqp_is_nonzero_via_deformed_representation() {
    let p = ASTMatrix::from_upper_triangle(2, 2, &[1]);
    let sys = build_smn_system(&p, &p);
    let ev = smn_nonzero_evidence(&p, &p, XConvention::Row);
    let target = TensorRepTarget {
        left: &ev.left,
        right: &ev.right,
        right_op: true,
    };
    let check = tensor_representation_check(&sys.z.pres, &ev.images, &target);
    assert!(check.verified(), "{:?}", check.failures);
    assert!(check.nonzero);
}
