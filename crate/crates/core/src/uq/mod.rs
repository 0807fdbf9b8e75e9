//! Non-intrusive generalized polynomial chaos over solver runs.

pub mod campaign;
pub mod legendre;
pub mod sampling;
pub mod stats;
pub mod surrogate;

pub use campaign::{run_uq_1d, run_uq_2d, Campaign, CampaignOptions, ChannelStats, ResponseKind};
pub use legendre::{basis_size, eval_basis, LegendreBasis};
pub use sampling::{sample_inputs, Distribution, RandomInputSpec, RandomParameter};
pub use stats::{Histogram, Moments};
pub use surrogate::{discrete_inner_product, fit_surrogate, Archive, Channel, FitMethod, GpcSurrogate};
