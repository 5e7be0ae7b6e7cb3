//! Plans parsed from s-expressions must print and reparse losslessly, and
//! small plans must count the same through both evaluation routes.

#![no_main]

use libfuzzer_sys::fuzz_target;
use trigon::Plan;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(plan) = Plan::parse_sexpr(text) else { return };
    let printed = plan.to_sexpr();
    let back = Plan::parse_sexpr(&printed).expect("printed plan must reparse");
    assert_eq!(back, plan);
    assert_eq!(back.to_sexpr(), printed);

    if plan.vertex_count() <= 64 {
        let (t, bottom) = trigon::evaluate_plan(&plan);
        let direct = trigon::satisfying_vector(&plan).total();
        let via_triangulation = trigon::satisfying_vector_at(&t, bottom)
            .expect("evaluation returns a boundary edge")
            .total();
        assert_eq!(direct, via_triangulation);
    }
});
