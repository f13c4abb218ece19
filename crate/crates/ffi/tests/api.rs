use std::ffi::CStr;
use std::ptr;

use cyclomat_ffi::*;

const SINE: u32 = CyclomatKind::Sine as u32;
const COSINE: u32 = CyclomatKind::Cosine as u32;

fn last_error() -> String {
    let p = cyclomat_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn invertibility_flags() {
    let mut flag = false;
    unsafe {
        assert_eq!(
            cyclomat_is_invertible(15, SINE, &mut flag),
            CyclomatStatus::Ok
        );
        assert!(flag);
        assert_eq!(
            cyclomat_is_invertible(4, SINE, &mut flag),
            CyclomatStatus::Ok
        );
        assert!(flag);
        assert_eq!(
            cyclomat_is_invertible(4, COSINE, &mut flag),
            CyclomatStatus::Ok
        );
        assert!(!flag);
        assert_eq!(
            cyclomat_is_invertible(18, COSINE, &mut flag),
            CyclomatStatus::Ok
        );
        assert!(!flag);
        assert_eq!(
            cyclomat_is_invertible(2, SINE, &mut flag),
            CyclomatStatus::InvalidArgument
        );
        assert_eq!(
            cyclomat_is_invertible(7, 9, &mut flag),
            CyclomatStatus::InvalidArgument
        );
        assert!(last_error().contains("unknown kind"));
        assert_eq!(
            cyclomat_is_invertible(7, SINE, ptr::null_mut()),
            CyclomatStatus::NullPointer
        );
    }
}

#[test]
fn matrix_handle() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(cyclomat_matrix_new(15, SINE, &mut m), CyclomatStatus::Ok);
        let d = cyclomat_matrix_dim(m);
        assert_eq!(d, 4);

        let mut reps = [0u64; 4];
        assert_eq!(
            cyclomat_matrix_representatives(m, reps.as_mut_ptr(), 4),
            CyclomatStatus::Ok
        );
        assert_eq!(reps, [1, 2, 4, 7]);

        let mut values = vec![0.0; d * d];
        assert_eq!(
            cyclomat_matrix_values(m, values.as_mut_ptr(), 3),
            CyclomatStatus::BufferTooSmall
        );
        assert_eq!(
            cyclomat_matrix_values(m, values.as_mut_ptr(), values.len()),
            CyclomatStatus::Ok
        );
        let expected = 2.0 * (std::f64::consts::TAU / 15.0).sin();
        assert!((values[0] - expected).abs() < 1e-15);

        // row 1, column 2: 2·4* = 2·4 = 8 ≡ −7
        let (mut sign, mut index, mut value) = (0i8, 0u64, 0.0);
        assert_eq!(
            cyclomat_matrix_entry(m, 1, 2, &mut sign, &mut index, &mut value),
            CyclomatStatus::Ok
        );
        assert_eq!((sign, index), (-1, 7));
        assert_eq!(value, values[6]);
        assert_eq!(
            cyclomat_matrix_entry(m, 4, 0, &mut sign, &mut index, &mut value),
            CyclomatStatus::InvalidArgument
        );
        cyclomat_matrix_free(m);
        cyclomat_matrix_free(ptr::null_mut());
        assert_eq!(cyclomat_matrix_dim(ptr::null()), 0);
    }
}

#[test]
fn inverse_handle_multiplies_to_identity() {
    unsafe {
        for n in [7u64, 15, 30, 4] {
            let mut m = ptr::null_mut();
            let mut inv = ptr::null_mut();
            assert_eq!(cyclomat_matrix_new(n, SINE, &mut m), CyclomatStatus::Ok);
            assert_eq!(cyclomat_inverse_new(n, SINE, &mut inv), CyclomatStatus::Ok);
            let d = cyclomat_inverse_dim(inv);
            let mut a = vec![0.0; d * d];
            let mut b = vec![0.0; d * d];
            assert_eq!(
                cyclomat_matrix_values(m, a.as_mut_ptr(), a.len()),
                CyclomatStatus::Ok
            );
            assert_eq!(
                cyclomat_inverse_values(inv, b.as_mut_ptr(), b.len()),
                CyclomatStatus::Ok
            );
            for i in 0..d {
                for j in 0..d {
                    let dot: f64 = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-12, "n={n} ({i},{j}) {dot}");
                }
            }
            cyclomat_matrix_free(m);
            cyclomat_inverse_free(inv);
        }
    }
}

#[test]
fn symbolic_tables() {
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(cyclomat_inverse_new(15, SINE, &mut inv), CyclomatStatus::Ok);
        assert_eq!(cyclomat_inverse_denominator(inv), 15);
        let mut num = [0i64; 16];
        assert_eq!(
            cyclomat_inverse_numerators(inv, num.as_mut_ptr(), 16),
            CyclomatStatus::Ok
        );
        assert_eq!(num, [3, -1, 0, 1, -1, 0, -1, -3, 0, -1, 3, 1, 1, -3, 1, 0]);
        cyclomat_inverse_free(inv);

        assert_eq!(
            cyclomat_inverse_new(7, COSINE, &mut inv),
            CyclomatStatus::Ok
        );
        let mut num = [0i64; 9];
        assert_eq!(
            cyclomat_inverse_numerators(inv, num.as_mut_ptr(), 9),
            CyclomatStatus::Ok
        );
        assert_eq!(&num[..3], &[3, 2, 2]);
        cyclomat_inverse_free(inv);
    }
}

#[test]
fn singular_inverse_is_reported() {
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(
            cyclomat_inverse_new(9, SINE, &mut inv),
            CyclomatStatus::Singular
        );
        assert!(inv.is_null());
        assert!(
            last_error().contains("9 is divisible by 3²"),
            "{}",
            last_error()
        );
        assert_eq!(
            cyclomat_inverse_new(4, COSINE, &mut inv),
            CyclomatStatus::Singular
        );
        assert!(last_error().contains("n = 4"));
    }
}

#[test]
fn spectrum_handle() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(cyclomat_spectrum_new(9, SINE, &mut s), CyclomatStatus::Ok);
        let len = cyclomat_spectrum_len(s);
        assert_eq!(len, 3);
        assert_eq!(cyclomat_spectrum_zero_count(s), 1);
        let mut re = vec![0.0; len];
        let mut im = vec![0.0; len];
        assert_eq!(
            cyclomat_spectrum_eigenvalues(s, re.as_mut_ptr(), im.as_mut_ptr(), len),
            CyclomatStatus::Ok
        );
        // a sine matrix is real with real trace; its eigenvalues sum to it
        let mut m = ptr::null_mut();
        assert_eq!(cyclomat_matrix_new(9, SINE, &mut m), CyclomatStatus::Ok);
        let mut a = vec![0.0; len * len];
        cyclomat_matrix_values(m, a.as_mut_ptr(), a.len());
        let trace: f64 = (0..len).map(|i| a[i * len + i]).sum();
        assert!((re.iter().sum::<f64>() - trace).abs() < 1e-9);
        assert!(im.iter().sum::<f64>().abs() < 1e-9);
        cyclomat_matrix_free(m);
        cyclomat_spectrum_free(s);
    }
}

#[test]
fn verify_counts() {
    let mut summary = CyclomatSummary::default();
    unsafe {
        assert_eq!(cyclomat_verify(3, 20, &mut summary), CyclomatStatus::Ok);
        assert_eq!(summary.failed, 0);
        assert!(summary.passed > 0);
        assert_eq!(
            cyclomat_verify(20, 3, &mut summary),
            CyclomatStatus::InvalidArgument
        );
        assert_eq!(
            cyclomat_verify(1, 3, &mut summary),
            CyclomatStatus::InvalidArgument
        );
    }
}

#[test]
fn abi_version() {
    assert_eq!(cyclomat_abi_version(), CYCLOMAT_ABI_VERSION);
}
