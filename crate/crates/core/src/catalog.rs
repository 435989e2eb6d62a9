//! Example domains shipped with the library.

use crate::domain::ReinhardtDomainSpec;

macro_rules! shipped {
    ($(#[$doc:meta] $fn:ident => $file:literal),* $(,)?) => {
        $(
            #[$doc]
            pub fn $fn() -> ReinhardtDomainSpec {
                ReinhardtDomainSpec::from_json_str(include_str!(concat!("../specs/", $file)))
                    .expect(concat!("shipped spec ", $file, " is valid"))
            }
        )*

        /// Every shipped domain.
        pub fn all() -> Vec<ReinhardtDomainSpec> {
            vec![$($fn()),*]
        }

        /// Looks a shipped domain up by its name.
        pub fn by_name(name: &str) -> Option<ReinhardtDomainSpec> {
            all().into_iter().find(|s| s.name() == name)
        }
    };
}

shipped! {
    /// `{|z| < 1}` in `C`.
    unit_disc => "unit-disc.json",
    /// The unit bidisc.
    bidisc => "bidisc.json",
    /// `D × D*`: the second coordinate never vanishes.
    disc_times_punctured => "disc-times-punctured-disc.json",
    /// `{|z1 z2| < 1}`.
    product_one => "product-one.json",
    /// `{|z1|^β + |z2|^β < 1}` with `β = 1/2`.
    d_beta => "d-beta-half.json",
    /// `{|z1| < 1, |z2| < 1, |z1| |z2|^√2 < 1/2}`.
    r_domain => "r-domain.json",
}
