//! Constructions producing non-empty loci: tensor products of small-slope
//! bundles with arbitrary ones, the product region of the BN map they
//! generate, and kernels of evaluation maps.

mod bpn;
mod kernel;
mod product;

pub use bpn::{bpn_boundary, bpn_membership, bpn_new_points, Branch, BpnNewPoint, BpnQuery};
pub use kernel::{
    c6_enumerate, kernel_beta_quadratic, kernel_construct, kernel_k_max, kernel_negativity_min_d, KernelWitness,
};
pub use product::{
    beta_product_normalized, beta_tensor_normalized, product_construct, product_negativity_search, NegativitySearch,
    ProductWitness,
};
