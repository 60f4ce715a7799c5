//! A desk-scale laboratory for the Maxwell-Klein-Gordon system on the
//! 2-torus in the Coulomb gauge.
//!
//! The crate has two halves:
//!
//! * a pseudospectral simulator for the coupled wave/elliptic system — the
//!   raw Coulomb-gauge equations and their null-form reformulation evolve
//!   side by side, with the temporal potential recovered as an ODE state and
//!   conservation laws tracked as discretization diagnostics
//!   ([`spectral`], [`fields`], [`elliptic`], [`dynamics`]);
//! * an exact feasibility engine for the exponent bookkeeping of bilinear
//!   wave-Sobolev product estimates, over rationals augmented with a
//!   symbolic infinitesimal ([`atlas`]).
//!
//! The `mkg2d` binary exposes both through the `simulate`, `check-estimate`,
//! `region`, `identities` and `convergence` subcommands; see the guide under
//! `book/` for a narrative tour.

pub mod atlas;
pub mod cli;
pub mod dynamics;
pub mod elliptic;
pub mod fields;
pub mod spectral;

// The guide's code snippets double as tests: rustdoc picks up the chapter
// files here, so `cargo test --doc` keeps the book in sync with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/elliptic.md")]
    mod elliptic {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/atlas.md")]
    mod atlas {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
