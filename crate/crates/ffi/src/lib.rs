//! C interface to `wigner-lab`.
//!
//! Every function returns a [`WlStatus`]; results travel through out-pointers.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free`. After a non-OK status, `wl_last_error_message` copies a
//! description of the failure for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_complex::Complex64;
use wigner_lab::kinematics::FourMomentum;
use wigner_lab::measurement::{self, ClickSetup, MeasurementSetup};
use wigner_lab::packets::{sigma_x_packet, GridScheme, MomentumGrid, SpinorPacket};
use wigner_lab::spinreduce::{self, von_neumann_entropy};
use wigner_lab::{wigner, BoostParams, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input outside the physical domain (|v| ≥ 1, ξ ≤ 0, off-shell momentum).
    Domain = 2,
    /// A precondition such as unit norm or basis orthonormality failed.
    Precondition = 3,
    /// Mismatched grids or a packet without an analytic profile.
    Structural = 4,
    /// Quadrature order outside 1..=256.
    InvalidArgument = 5,
    Panic = 6,
}

/// A Lorentz boost along x for a particle of fixed mass.
pub struct WlBoost(BoostParams);

/// A two-component momentum-space wave packet on a quadrature grid.
pub struct WlPacket(SpinorPacket);

/// Reduced spin state `½[[1+γ, δ], [δ*, 1−γ]]` and its entropy in nats.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WlSpinState {
    pub gamma: f64,
    pub delta_re: f64,
    pub delta_im: f64,
    pub entropy: f64,
}

/// Click counts for the static and the moving observer.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WlClickCounts {
    pub static_up: u64,
    pub static_diag: u64,
    pub moving_up: u64,
    pub moving_diag: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> WlStatus {
    match err {
        Error::Domain(_) => WlStatus::Domain,
        Error::Precondition(_) => WlStatus::Precondition,
        Error::Structural(_) => WlStatus::Structural,
    }
}

enum Failure {
    Null(&'static str),
    Order(usize),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WlStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed as {what}"));
            WlStatus::NullPointer
        }
        Ok(Err(Failure::Order(n))) => {
            set_last_error(format!("quadrature order {n} outside 1..=256"));
            WlStatus::InvalidArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            WlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(out: *mut T, what: &'static str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn scheme(order: usize) -> Result<GridScheme, Failure> {
    if !(1..=256).contains(&order) {
        return Err(Failure::Order(order));
    }
    Ok(GridScheme::GaussHermite { order })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length without the NUL.
/// Returns 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn wl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn wl_boost_new(v: f64, m: f64, out: *mut *mut WlBoost) -> WlStatus {
    guard(|| {
        let b = BoostParams::new(v, m)?;
        write(out, "out", Box::into_raw(Box::new(WlBoost(b))))
    })
}

/// # Safety
/// `boost` must be null or a handle from `wl_boost_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wl_boost_free(boost: *mut WlBoost) {
    if !boost.is_null() {
        drop(Box::from_raw(boost));
    }
}

/// Rapidity θ and whether |v| was clamped below 1.
///
/// # Safety
/// `boost` must be a live handle; `theta` and `clamped` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wl_boost_rapidity(boost: *const WlBoost, theta: *mut f64, clamped: *mut bool) -> WlStatus {
    guard(|| {
        let b = &deref(boost, "boost")?.0;
        write(theta, "theta", b.theta())?;
        write(clamped, "clamped", b.clamped())
    })
}

/// Gaussian packet of width `xi` in the +x spin eigenstate on a
/// Gauss–Hermite grid of `order` nodes per axis.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_sigma_x(xi: f64, order: usize, out: *mut *mut WlPacket) -> WlStatus {
    guard(|| {
        let grid = Arc::new(MomentumGrid::for_width(xi, scheme(order)?)?);
        let packet = sigma_x_packet(xi, grid)?;
        write(out, "out", Box::into_raw(Box::new(WlPacket(packet))))
    })
}

/// # Safety
/// `packet` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_free(packet: *mut WlPacket) {
    if !packet.is_null() {
        drop(Box::from_raw(packet));
    }
}

/// The packet seen by the moving observer, as a new handle.
///
/// # Safety
/// `packet` and `boost` must be live handles; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_boost(
    packet: *const WlPacket,
    boost: *const WlBoost,
    out: *mut *mut WlPacket,
) -> WlStatus {
    guard(|| {
        let p = &deref(packet, "packet")?.0;
        let b = &deref(boost, "boost")?.0;
        let boosted = wigner::boost_packet(p, b)?;
        write(out, "out", Box::into_raw(Box::new(WlPacket(boosted))))
    })
}

/// Number of grid nodes.
///
/// # Safety
/// `packet` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_len(packet: *const WlPacket, out: *mut usize) -> WlStatus {
    guard(|| write(out, "out", deref(packet, "packet")?.0.grid().len()))
}

/// `∫ |a₁|² + |a₂|² d³p`.
///
/// # Safety
/// `packet` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_norm(packet: *const WlPacket, out: *mut f64) -> WlStatus {
    guard(|| write(out, "out", deref(packet, "packet")?.0.norm_sqr()))
}

/// Traces out momentum.
///
/// # Safety
/// `packet` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_packet_reduce(packet: *const WlPacket, out: *mut WlSpinState) -> WlStatus {
    guard(|| {
        let rho = spinreduce::reduce(&deref(packet, "packet")?.0)?;
        let d: Complex64 = rho.delta();
        let state =
            WlSpinState { gamma: rho.gamma(), delta_re: d.re, delta_im: d.im, entropy: von_neumann_entropy(&rho) };
        write(out, "out", state)
    })
}

/// Narrow-packet coherence `δ(ξ, m, v)`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_analytic_delta(xi: f64, m: f64, v: f64, out: *mut f64) -> WlStatus {
    guard(|| write(out, "out", spinreduce::analytic_delta(xi, m, v)?))
}

/// Entropy of `½[[1, δ], [δ, 1]]` in nats.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_analytic_entropy(delta: f64, out: *mut f64) -> WlStatus {
    guard(|| write(out, "out", spinreduce::analytic_entropy(delta)?))
}

/// Pointwise efficiency of the moving detector at the on-shell momentum `p`.
///
/// # Safety
/// `boost` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_detector_efficiency(
    px: f64,
    py: f64,
    pz: f64,
    boost: *const WlBoost,
    out: *mut f64,
) -> WlStatus {
    guard(|| {
        let b = &deref(boost, "boost")?.0;
        let p = FourMomentum::on_shell([px, py, pz], b.m())?;
        write(out, "out", measurement::detector_efficiency(&p, b)?)
    })
}

/// Efficiency averaged over the boosted packet of width `xi`.
///
/// # Safety
/// `boost` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_mean_efficiency(xi: f64, boost: *const WlBoost, order: usize, out: *mut f64) -> WlStatus {
    guard(|| {
        let b = &deref(boost, "boost")?.0;
        write(out, "out", measurement::mean_efficiency(xi, b, scheme(order)?)?)
    })
}

/// Boosted orthogonality residual for σˣ records with real ket overlap
/// `overlap_c`, apparatus packets of width `xi`.
///
/// # Safety
/// `boost` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_collapse_residual(
    xi: f64,
    overlap_c: f64,
    boost: *const WlBoost,
    order: usize,
    out: *mut f64,
) -> WlStatus {
    guard(|| {
        let b = &deref(boost, "boost")?.0;
        let setup = MeasurementSetup::with_sigma_x_records(xi, overlap_c, *b, scheme(order)?)?;
        write(out, "out", measurement::boosted_orthogonality_residual(&setup)?)
    })
}

/// Monte Carlo σˣ clicks for both observers. Deterministic in `seed`.
///
/// # Safety
/// `boost` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wl_clicks_run(
    xi: f64,
    boost: *const WlBoost,
    samples: u64,
    seed: u64,
    out: *mut WlClickCounts,
) -> WlStatus {
    guard(|| {
        let b = &deref(boost, "boost")?.0;
        let report = measurement::click_simulator(&ClickSetup::sigma_x(xi, *b)?, samples, seed)?;
        let counts = WlClickCounts {
            static_up: report.static_frame.n_up,
            static_diag: report.static_frame.n_diag,
            moving_up: report.moving_frame.n_up,
            moving_diag: report.moving_frame.n_diag,
        };
        write(out, "out", counts)
    })
}
