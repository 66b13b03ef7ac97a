//! Human and TSV renderings of verdicts.

use addcomb::{Branch, TheoremId, TheoremVerdict};

/// Cardinalities that appear in the printed inequalities.
pub struct Sizes {
    pub a: usize,
    pub b: usize,
    pub t: u32,
}

fn list(v: &addcomb::GSet) -> String {
    v.to_string()
}

/// One line: the inequality with the instance's numbers substituted.
pub fn human(v: &TheoremVerdict, s: &Sizes) -> String {
    let status = if v.holds { "holds" } else { "FAILS" };
    let (l, r, t) = (v.lhs, v.rhs, s.t);
    let body = match (v.theorem, v.branch) {
        (_, Branch::NotApplicable) => "hypotheses not met".to_string(),
        (TheoremId::Kneser, _) => format!("|A+B| = {l} ≥ |A+H|+|B+H|−|H| = {r}"),
        (TheoremId::Pollard | TheoremId::Chowla, _) => {
            format!("Σ_{{i≤{t}}} |A+_iB| = {l} ≥ t·min(|G|, |A|+|B|−t) = {r}")
        }
        (TheoremId::GreenRuzsa, _) => format!("Σ_{{i≤{t}}} |A+_iB| = {l} ≥ t·min(|G|, |A|+|B|−D−t) = {r}"),
        (TheoremId::Main, Branch::Witness) | (TheoremId::T2, Branch::Witness) => {
            let w = v.witness.as_ref().expect("witness branch");
            let tw = if v.theorem == TheoremId::T2 { 2 } else { t };
            format!(
                "Σ_{{i≤{tw}}} |A+_iB| = {l} ≥ t|A|+t|B|−(t−l)(|H|−ρ)−tl = {r} with A′ = {}, B′ = {}, l = {}, H = {}, ρ = {}",
                list(&w.a_prime),
                list(&w.b_prime),
                w.l,
                list(w.h.carrier()),
                w.rho
            )
        }
        (TheoremId::Main, _) => {
            format!("Σ_{{i≤{t}}} |A+_iB| = {l} ≥ t|A|+t|B|−2t²+1 = {}·{}+{}·{}−2·{}+1 = {r}", t, s.a, t, s.b, t * t)
        }
        (TheoremId::T2 | TheoremId::Corollary, Branch::Coset) => {
            format!("a coset x+H ⊆ A+_2B with |H| = {l} ≥ {r}")
        }
        (TheoremId::T2 | TheoremId::Corollary, _) => {
            format!("|A+_1B|+|A+_2B| = {l} ≥ 2|A|+2|B|−4 = 2·{}+2·{}−4 = {r}", s.a, s.b)
        }
        (TheoremId::Mult, _) => format!("min_{{c∈A+B}} r_{{A,B}}(c) = {l} ≥ |A|+|B|−|A+B| = {r}"),
        (TheoremId::Critical, _) => format!("min_{{b∉B}} |A+(B∪{{b}})| = {l} ≥ |A+B|+1 = {r}"),
        (TheoremId::Remark, _) => format!("|H| = {l} ≥ 2t+ρ = {r} and A+_tB = A+_{{2t}}B"),
        (TheoremId::Energy, _) => {
            format!("Σ_{{i≤{t}}} |A+_iB| = {l} ≥ ⌈t·min{{|A||B|/(t+√(t(t−1))), |A|²|B|/(|T|(|B|−k)+k|A|)}}⌉ = {r}")
        }
        (TheoremId::EnergyUpper, _) => format!("|T||B|(|B|−k)+(k−1)|A||B| = {l} ≥ 2E(A,B) = {r}"),
    };
    format!("{:<13} {:<14} {status}: {body}", v.theorem.name(), v.branch.to_string())
}

pub const TSV_HEADER: &str = "theorem\tholds\tbranch\tlhs\trhs\tl\trho\tH\tA_prime\tB_prime\telapsed_ns";

pub fn tsv(v: &TheoremVerdict) -> String {
    let (l, rho, h, ap, bp) = match &v.witness {
        Some(w) => (w.l.to_string(), w.rho.to_string(), list(w.h.carrier()), list(&w.a_prime), list(&w.b_prime)),
        None => Default::default(),
    };
    format!(
        "{}\t{}\t{}\t{}\t{}\t{l}\t{rho}\t{h}\t{ap}\t{bp}\t{}",
        v.theorem.name(),
        v.holds,
        v.branch,
        v.lhs,
        v.rhs,
        v.elapsed_ns
    )
}
