//! The claim strings findings carry, one per checked statement.

pub const ARTINIAN_FIXTURE: &str =
    "Z fixture: R*G finite-dimensional with G infinite and not of finite type (artinian read as finite-dimensional)";
pub const ARTINIAN: &str = "finite type, R finite-dimensional, G finite => R*G finite-dimensional (artinian read as finite-dimensional)";
pub const NOETHERIAN: &str = "finite support => R*G finite-dimensional with dim R*G = sum of dim D_g <= |supp| dim R";
pub const SEMISIMPLE: &str = "|G| invertible: R semisimple <=> R*G semisimple";
pub const SEMISIMPLE_CONTROL: &str = "control, |G| = 0 in the field: R semisimple <=> R*G semisimple";
pub const MASCHKE_QUOTED: &str = "averaging with 1/|G|: Psi|_N = id, Psi^2 = Psi onto N, Psi a module map";
pub const MASCHKE_NORMALIZED: &str =
    "averaging with (sum of 1_g)^-1: Psi|_N = id, Psi^2 = Psi onto N, Psi a module map";
pub const FROBENIUS: &str = "R Frobenius => R*G Frobenius";
pub const SYMMETRIC: &str = "R symmetric => R*G symmetric";
pub const SUBGROUP: &str = "R*G = R*H + A with A stable under R*H on both sides";
pub const QUOTIENT: &str = "(R*G)/(I*G) ≅ (R/I)*G on the canonical basis";
pub const ENVELOPING: &str = "globalization: (T, beta) is an enveloping action";
pub const ENVELOPING_WINDOW: &str = "truncated Z window: (T, beta) is an enveloping action";
pub const ROUND_TRIP: &str = "globalize then restrict recovers the action";
pub const UNITAL: &str = "finite group: the enveloping algebra T is unital";
pub const MORITA: &str = "Morita fingerprint: center dimension and semisimplicity agree for R*G and T*G";
pub const RELATIVE: &str = "component actions satisfy the relative partial action axioms";
pub const TRIANGULAR: &str = "L*G ≅ (R*G, M, S*G) as algebras";
pub const DIAGONAL: &str = "diagonal extension: L*G = (R*G, R*G, R*G)";
pub const FIXED_SUBALGEBRA: &str = "the fixed ring is a unital subalgebra";
pub const FIXED_AVERAGE: &str = "global untwisted action, |G| invertible: averaging projects onto the fixed ring";
