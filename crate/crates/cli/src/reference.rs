//! Published inf-sup values for the unit square and for `[0, 2]^2`, keyed by
//! `(L, N, K)` with `h = 1/K`. Blank table cells are absent.

/// One tabulated value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub length: f64,
    pub degree: usize,
    pub elements: usize,
    pub beta: f64,
}

const fn rv(length: f64, degree: usize, elements: usize, beta: f64) -> ReferenceValue {
    ReferenceValue {
        length,
        degree,
        elements,
        beta,
    }
}

const VALUES: [ReferenceValue; 30] = [
    // [0, 1]^2
    rv(1.0, 1, 2, 0.999999994172141),
    rv(1.0, 1, 4, 0.999999987740597),
    rv(1.0, 1, 8, 0.999999986310051),
    rv(1.0, 1, 16, 0.999999980277492),
    rv(1.0, 1, 32, 0.999999972413976),
    rv(1.0, 1, 64, 0.999999980522211),
    rv(1.0, 2, 2, 0.999999989168835),
    rv(1.0, 2, 4, 0.999999978618959),
    rv(1.0, 2, 8, 0.999999962318488),
    rv(1.0, 2, 16, 0.999999916432749),
    rv(1.0, 2, 32, 0.999999896705947),
    rv(1.0, 3, 2, 0.999999978662899),
    rv(1.0, 3, 4, 0.999999947316136),
    rv(1.0, 3, 8, 0.999999878165505),
    rv(1.0, 3, 16, 0.999999891563428),
    // [0, 2]^2
    rv(2.0, 1, 2, 0.999999994172141),
    rv(2.0, 1, 4, 0.999999985661708),
    rv(2.0, 1, 8, 0.999999985276638),
    rv(2.0, 1, 16, 0.999999982313628),
    rv(2.0, 1, 32, 0.999999972765685),
    rv(2.0, 1, 64, 0.999999980528361),
    rv(2.0, 2, 2, 0.999999983449168),
    rv(2.0, 2, 4, 0.999999971854628),
    rv(2.0, 2, 8, 0.999999932115646),
    rv(2.0, 2, 16, 0.999999842706989),
    rv(2.0, 2, 32, 0.999999906834163),
    rv(2.0, 3, 2, 0.999999976327674),
    rv(2.0, 3, 4, 0.999999961774105),
    rv(2.0, 3, 8, 0.999999862356188),
    rv(2.0, 3, 16, 0.999999877166154),
];

/// The embedded reference tables.
#[derive(Debug, Clone, Copy, Default)]
pub struct PaperReference;

impl PaperReference {
    pub fn values(&self) -> &'static [ReferenceValue] {
        &VALUES
    }

    pub fn get(&self, length: f64, degree: usize, elements: usize) -> Option<f64> {
        VALUES
            .iter()
            .find(|v| v.length == length && v.degree == degree && v.elements == elements)
            .map(|v| v.beta)
    }

    /// Values for one domain size.
    pub fn table(&self, length: f64) -> impl Iterator<Item = &'static ReferenceValue> {
        VALUES.iter().filter(move |v| v.length == length)
    }
}
