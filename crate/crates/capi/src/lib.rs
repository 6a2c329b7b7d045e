//! C ABI for the grouppoly engine.
//!
//! Groups are opaque handles created from builtin specs or files and freed
//! with [`gp_group_free`]. Computation entry points return JSON documents
//! as newly allocated C strings (free with [`gp_string_free`]) and signal
//! failure by returning null; [`gp_last_error_message`] describes the most
//! recent failure on the calling thread. Status-returning functions use
//! [`GpStatus`], whose values match the CLI exit codes.

use grouppoly::characters::{lift_character_table, partition_character_table};
use grouppoly::class_algebra::{gram_matrix, regular_representation};
use grouppoly::error::Error;
use grouppoly::group::{conjugacy_classes, exponent, load_group, FiniteGroup, GroupSource};
use grouppoly::mckay::mckay_check;
use grouppoly::partition::{build_partition, structure_constants, PartitionKind};
use grouppoly::polynomials::{
    degree_polynomial_both, equal_by_permutation, frobenius_polynomial, normal_subgroup_lattice,
};
use grouppoly::report;
use grouppoly::verify::run_all;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

/// Status codes; `Ok` is zero, everything else names the failure class.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    NullPointer = 3,
}

/// Opaque handle to a loaded finite group.
pub struct GpGroup {
    inner: FiniteGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(msg).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = None;
    });
}

fn status_of(err: &Error) -> GpStatus {
    match err {
        Error::VerificationFailed(_) => GpStatus::VerificationFailed,
        _ => GpStatus::InvalidInput,
    }
}

/// Last error message on this thread, or null when the previous call
/// succeeded. The pointer stays valid until the next failing call on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn gp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.as_ptr(),
        None => ptr::null(),
    })
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, Error> {
    if ptr.is_null() {
        return Err(Error::Parse("null string argument".into()));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::Parse("argument is not valid UTF-8".into()))
}

fn boxed_group(source: GroupSource) -> *mut GpGroup {
    match load_group(&source, grouppoly::group::DEFAULT_ORDER_BOUND) {
        Ok(inner) => {
            clear_error();
            Box::into_raw(Box::new(GpGroup { inner }))
        }
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Load a builtin group: `Zn:<k>`, `Sn:<k>`, `An:<k>`, `D:<2k>`, `Q8`,
/// `SL23`, or products joined by `x`. Returns null on failure.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_builtin(spec: *const c_char) -> *mut GpGroup {
    match cstr_arg(spec) {
        Ok(s) => boxed_group(GroupSource::Builtin(s.to_string())),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Load a group from a Cayley-table file (line 1 = order, then 1-based
/// rows). Returns null on failure.
///
/// # Safety
/// `path` must be a valid NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_from_cayley_file(path: *const c_char) -> *mut GpGroup {
    match cstr_arg(path) {
        Ok(s) => boxed_group(GroupSource::CayleyFile(PathBuf::from(s))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Load a group from a permutation-generator file, one cycle-notation
/// generator per line. Returns null on failure.
///
/// # Safety
/// `path` must be a valid NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_from_perm_file(path: *const c_char) -> *mut GpGroup {
    match cstr_arg(path) {
        Ok(s) => boxed_group(GroupSource::PermFile(PathBuf::from(s))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// The normalizer of a Sylow p-subgroup of `group`, induced as a group in
/// its own right. Returns null on failure; `group` stays valid.
///
/// # Safety
/// `group` must be a handle from one of the constructors, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_group_sylow_normalizer(group: *const GpGroup, p: u64) -> *mut GpGroup {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let result = grouppoly::group::sylow_subgroup(&g.inner, p, 0).map(|syl| {
        let norm = grouppoly::group::normalizer(&g.inner, &syl);
        grouppoly::group::induced_group(&g.inner, &norm)
    });
    match result {
        Ok(inner) => {
            clear_error();
            Box::into_raw(Box::new(GpGroup { inner }))
        }
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `group` must be a handle from one of the constructors or null; it must
/// not be used after this call.
#[no_mangle]
pub unsafe extern "C" fn gp_group_free(group: *mut GpGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Group order; 0 for a null handle.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_order(group: *const GpGroup) -> u64 {
    group.as_ref().map(|g| g.inner.order() as u64).unwrap_or(0)
}

/// Number of conjugacy classes; 0 for a null handle.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_class_count(group: *const GpGroup) -> u64 {
    group
        .as_ref()
        .map(|g| conjugacy_classes(&g.inner).n_classes as u64)
        .unwrap_or(0)
}

/// Group exponent; 0 for a null handle.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gp_group_exponent(group: *const GpGroup) -> u64 {
    group.as_ref().map(|g| exponent(&g.inner)).unwrap_or(0)
}

fn json_out(value: serde_json::Value) -> *mut c_char {
    clear_error();
    match CString::new(value.to_string()) {
        Ok(s) => s.into_raw(),
        Err(_) => {
            set_error("payload contained an interior NUL".into());
            ptr::null_mut()
        }
    }
}

fn fail_out(e: Error) -> *mut c_char {
    set_error(e.to_string());
    ptr::null_mut()
}

/// Free a string returned by any of the `_json` functions.
///
/// # Safety
/// `s` must be a pointer previously returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Conjugacy class data as JSON.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_classes_json(group: *const GpGroup) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let c = conjugacy_classes(&g.inner);
    json_out(report::classes_json(&g.inner, &c))
}

/// Exact ordinary character table as JSON.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_chartable_json(group: *const GpGroup) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let result = (|| {
        let c = conjugacy_classes(&g.inner);
        let part = build_partition(&g.inner, &c, &PartitionKind::Trivial)?;
        let tensor = structure_constants(&g.inner, &c, &part)?;
        let rep = regular_representation(&tensor, &part)?;
        let gram = gram_matrix(&rep)?;
        let table = lift_character_table(&g.inner, &c, &part, &tensor, &rep, &gram)?;
        Ok(report::chartable_json(&table))
    })();
    match result {
        Ok(v) => json_out(v),
        Err(e) => fail_out(e),
    }
}

fn with_partition_stack<T>(
    g: &FiniteGroup,
    partition_spec: &str,
    f: impl FnOnce(
        &grouppoly::group::ClassData,
        &grouppoly::partition::GoodPartition,
        &grouppoly::partition::StructTensor,
        &grouppoly::class_algebra::RegularRep,
        &grouppoly::class_algebra::GramMatrix,
    ) -> Result<T, Error>,
) -> Result<T, Error> {
    let c = conjugacy_classes(g);
    let kind = PartitionKind::parse(partition_spec)?;
    let part = build_partition(g, &c, &kind)?;
    let tensor = structure_constants(g, &c, &part)?;
    let rep = regular_representation(&tensor, &part)?;
    let gram = gram_matrix(&rep)?;
    f(&c, &part, &tensor, &rep, &gram)
}

/// Degree polynomial of the given partition (both routes asserted equal),
/// as JSON.
///
/// # Safety
/// `group` must be a live handle; `partition_spec` a valid string.
#[no_mangle]
pub unsafe extern "C" fn gp_degree_polynomial_json(
    group: *const GpGroup,
    partition_spec: *const c_char,
) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let spec = match cstr_arg(partition_spec) {
        Ok(s) => s,
        Err(e) => return fail_out(e),
    };
    let result = with_partition_stack(&g.inner, spec, |_c, part, tensor, rep, gram| {
        let (dp, other) = degree_polynomial_both(&g.inner, rep, part, gram, tensor)?;
        let agree = dp.coeffs == other.coeffs;
        Ok(report::degree_poly_json(&dp, &part.kind.tag(), agree))
    });
    match result {
        Ok(v) => json_out(v),
        Err(e) => fail_out(e),
    }
}

/// Factored Frobenius polynomial of the given partition as JSON.
///
/// # Safety
/// `group` must be a live handle; `partition_spec` a valid string.
#[no_mangle]
pub unsafe extern "C" fn gp_frobenius_json(
    group: *const GpGroup,
    partition_spec: *const c_char,
) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let spec = match cstr_arg(partition_spec) {
        Ok(s) => s,
        Err(e) => return fail_out(e),
    };
    let result = with_partition_stack(&g.inner, spec, |c, part, tensor, rep, gram| {
        let triv = build_partition(&g.inner, c, &PartitionKind::Trivial)?;
        let triv_tensor = structure_constants(&g.inner, c, &triv)?;
        let triv_rep = regular_representation(&triv_tensor, &triv)?;
        let triv_gram = gram_matrix(&triv_rep)?;
        let table =
            lift_character_table(&g.inner, c, &triv, &triv_tensor, &triv_rep, &triv_gram)?;
        let pt = partition_character_table(&table, part, rep, gram, tensor, &g.inner)?;
        let forms = frobenius_polynomial(&pt)?;
        Ok(report::frobenius_json(&forms, &part.kind.tag()))
    });
    match result {
        Ok(v) => json_out(v),
        Err(e) => fail_out(e),
    }
}

/// McKay comparison verdict as JSON. `subfield_csv` lists Galois residues
/// separated by commas; pass "1" (or an empty string) for the splitting
/// field.
///
/// # Safety
/// `group` must be a live handle; `subfield_csv` a valid string or null.
#[no_mangle]
pub unsafe extern "C" fn gp_mckay_json(
    group: *const GpGroup,
    p: u64,
    subfield_csv: *const c_char,
    seed: u64,
) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let subfield: Vec<u64> = if subfield_csv.is_null() {
        vec![1]
    } else {
        match cstr_arg(subfield_csv) {
            Ok(s) if s.trim().is_empty() => vec![1],
            Ok(s) => {
                let parsed: Result<Vec<u64>, _> =
                    s.split(',').map(|t| t.trim().parse::<u64>()).collect();
                match parsed {
                    Ok(v) => v,
                    Err(_) => {
                        set_error(format!("bad subfield list {:?}", s));
                        return ptr::null_mut();
                    }
                }
            }
            Err(e) => return fail_out(e),
        }
    };
    match mckay_check(&g.inner, p, &subfield, seed) {
        Ok(v) => json_out(report::mckay_json(&v)),
        Err(e) => fail_out(e),
    }
}

/// Normal-subgroup lattice as JSON.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_lattice_json(group: *const GpGroup) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let result = with_partition_stack(&g.inner, "trivial", |_c, part, tensor, _rep, _gram| {
        let lat = normal_subgroup_lattice(tensor, part)?;
        Ok(report::lattice_json(&lat))
    });
    match result {
        Ok(v) => json_out(v),
        Err(e) => fail_out(e),
    }
}

/// Run the full invariant suite; the JSON lists each check with its
/// verdict.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_verify_all_json(group: *const GpGroup, seed: u64) -> *mut c_char {
    let Some(g) = group.as_ref() else {
        set_error("null group handle".into());
        return ptr::null_mut();
    };
    let report = run_all(&g.inner, seed);
    json_out(report::verify_json(&report))
}

/// Decide whether the two groups' Frobenius polynomials are equal up to a
/// variable permutation; writes the verdict through `out_equal`.
///
/// # Safety
/// `a` and `b` must be live handles; `out_equal` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_compare(
    a: *const GpGroup,
    b: *const GpGroup,
    out_equal: *mut bool,
) -> GpStatus {
    let (Some(ga), Some(gb), false) = (a.as_ref(), b.as_ref(), out_equal.is_null()) else {
        set_error("null argument".into());
        return GpStatus::NullPointer;
    };
    let run = |g: &FiniteGroup| -> Result<_, Error> {
        let c = conjugacy_classes(g);
        let part = build_partition(g, &c, &PartitionKind::Trivial)?;
        let tensor = structure_constants(g, &c, &part)?;
        let rep = regular_representation(&tensor, &part)?;
        let gram = gram_matrix(&rep)?;
        let table = lift_character_table(g, &c, &part, &tensor, &rep, &gram)?;
        let pt = partition_character_table(&table, &part, &rep, &gram, &tensor, g)?;
        let forms = frobenius_polynomial(&pt)?;
        Ok((part, tensor, forms))
    };
    let result = (|| {
        let (part_a, tensor_a, forms_a) = run(&ga.inner)?;
        let (part_b, tensor_b, forms_b) = run(&gb.inner)?;
        equal_by_permutation(&tensor_a, &part_a, &forms_a, &tensor_b, &part_b, &forms_b)
    })();
    match result {
        Ok(verdict) => {
            clear_error();
            *out_equal = verdict.equal;
            GpStatus::Ok
        }
        Err(e) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cs(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_json(ptr: *mut c_char) -> serde_json::Value {
        assert!(!ptr.is_null(), "{:?}", unsafe {
            gp_last_error_message().as_ref().map(|p| CStr::from_ptr(p))
        });
        let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { gp_string_free(ptr) };
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn group_lifecycle_and_accessors() {
        unsafe {
            let g = gp_group_builtin(cs("Sn:3").as_ptr());
            assert!(!g.is_null());
            assert_eq!(gp_group_order(g), 6);
            assert_eq!(gp_group_class_count(g), 3);
            assert_eq!(gp_group_exponent(g), 6);
            gp_group_free(g);
            // bad spec: null handle plus an error message
            let bad = gp_group_builtin(cs("Foo:1").as_ptr());
            assert!(bad.is_null());
            assert!(!gp_last_error_message().is_null());
        }
    }

    #[test]
    fn chartable_json_roundtrip() {
        unsafe {
            let g = gp_group_builtin(cs("Q8").as_ptr());
            let v = take_json(gp_chartable_json(g));
            let degrees: Vec<u64> = v["characters"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c["degree"].as_u64().unwrap())
                .collect();
            assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
            gp_group_free(g);
        }
    }

    #[test]
    fn degree_polynomial_and_frobenius() {
        unsafe {
            let g = gp_group_builtin(cs("Sn:3").as_ptr());
            let v = take_json(gp_degree_polynomial_json(g, cs("trivial").as_ptr()));
            assert_eq!(v["factored"], "(x-1)^2*(x-4)");
            assert_eq!(v["routes_agree"], true);
            let v = take_json(gp_frobenius_json(g, cs("trivial").as_ptr()));
            assert_eq!(v["forms"].as_array().unwrap().len(), 3);
            // an invalid partition spec fails with a message
            let bad = gp_degree_polynomial_json(g, cs("galois=2").as_ptr());
            assert!(bad.is_null());
            assert!(!gp_last_error_message().is_null());
            gp_group_free(g);
        }
    }

    #[test]
    fn mckay_and_sylow_normalizer() {
        unsafe {
            let g = gp_group_builtin(cs("An:5").as_ptr());
            let v = take_json(gp_mckay_json(g, 2, cs("1").as_ptr(), 0));
            assert_eq!(v["equal"], true);
            assert_eq!(v["normalizer_order"], 12);
            let n = gp_group_sylow_normalizer(g, 2);
            assert_eq!(gp_group_order(n), 12);
            gp_group_free(n);
            gp_group_free(g);
        }
    }

    #[test]
    fn lattice_and_verify() {
        unsafe {
            let g = gp_group_builtin(cs("Sn:4").as_ptr());
            let v = take_json(gp_lattice_json(g));
            assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
            let v = take_json(gp_verify_all_json(g, 0));
            assert_eq!(v["passed"], true);
            gp_group_free(g);
        }
    }

    #[test]
    fn compare_status() {
        unsafe {
            let d8 = gp_group_builtin(cs("D:8").as_ptr());
            let q8 = gp_group_builtin(cs("Q8").as_ptr());
            let z6 = gp_group_builtin(cs("Zn:6").as_ptr());
            let mut equal = false;
            assert!(gp_compare(d8, q8, &mut equal) == GpStatus::Ok);
            assert!(equal);
            assert!(gp_compare(d8, z6, &mut equal) == GpStatus::Ok);
            assert!(!equal);
            assert!(gp_compare(std::ptr::null(), q8, &mut equal) == GpStatus::NullPointer);
            gp_group_free(d8);
            gp_group_free(q8);
            gp_group_free(z6);
        }
    }
}
