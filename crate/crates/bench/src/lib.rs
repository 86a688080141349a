//! Instances shared by the criterion benchmarks.

/// Newton iteration for `sin` reconstructed from its SSA temporaries.
pub const NEWTON: &str = include_str!("../../cli/tests/fixtures/newton_step_fixed.smt2");

/// Newton step with an added lower bound on the result.
pub const NEWTON_CEX: &str = include_str!("../../cli/tests/fixtures/newton_counterexample.smt2");

/// `(x - y) * (x - y) < 0` over binary32, unsat once the square is recovered.
pub const NEG_SQUARE: &str = "(set-logic QF_FP)
(declare-fun x () Float32)
(declare-fun y () Float32)
(define-fun d () Float32 (fp.sub RNE x y))
(define-fun p () Float32 (fp.mul RNE d d))
(assert (fp.lt p (_ -zero 8 24)))
(check-sat)
";

/// `X > Z, Y <= Z, X = Y`: refuted by the cycle check alone.
pub const CYCLE: &str = "(set-logic QF_FP)
(declare-fun x () Float32)
(declare-fun y () Float32)
(declare-fun z () Float32)
(assert (fp.gt x z))
(assert (fp.leq y z))
(assert (fp.eq x y))
(check-sat)
";

#[cfg(test)]
mod tests {
    use fpcp_core::smtlib::parse_str;

    #[test]
    fn instances_parse() {
        for src in [super::NEWTON, super::NEWTON_CEX, super::NEG_SQUARE, super::CYCLE] {
            parse_str(src).unwrap();
        }
    }
}
