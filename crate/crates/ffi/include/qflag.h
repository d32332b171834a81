#ifndef QFLAG_H
#define QFLAG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum QflagStatus {
  QflagStatus_Ok = 0,
  // A check ran and reported violations.
  QflagStatus_Violations = 1,
  QflagStatus_NullPointer = 2,
  QflagStatus_InvalidUtf8 = 3,
  QflagStatus_InvalidArgument = 4,
  QflagStatus_Syntax = 5,
  QflagStatus_DivisionByZero = 6,
  QflagStatus_OutOfRange = 7,
  QflagStatus_NotReduced = 8,
  // An algebraic precondition failed, e.g. a result outside `U_q(n)`.
  QflagStatus_Algebra = 9,
  QflagStatus_Panic = 10,
} QflagStatus;

// A dual canonical basis for one reduced word of `w_0`, with its caches.
typedef struct QflagBasis QflagBasis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or an empty string. The
// pointer stays valid until the next call on this thread.
const char *qflag_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qflag_string_free(char *s);

// Builds the basis for Cartan type `label` (e.g. "A3") and a reduced word of
// `w_0` given as `word_len` letters. With `word_len == 0` the default longest
// word is used.
//
// # Safety
// `label` must be a NUL-terminated string, `word` must point to `word_len`
// values and `out` must be writable.
enum QflagStatus qflag_basis_new(const char *label,
                                 const uintptr_t *word,
                                 uintptr_t word_len,
                                 struct QflagBasis **out);

// Releases a basis. Null is ignored.
//
// # Safety
// `b` must come from [`qflag_basis_new`] and not have been freed.
void qflag_basis_free(struct QflagBasis *b);

// Writes the rank and the word length `N` (the number of positive roots).
//
// # Safety
// `b` must be a live basis; the out-pointers must be writable.
enum QflagStatus qflag_basis_dims(const struct QflagBasis *b, uintptr_t *rank, uintptr_t *length);

// Writes the PBW datum `n_k` of the `k`-th flag minor, `1 <= k <= N`, into
// `datum`, which must hold `N` entries.
//
// # Safety
// `b` must be a live basis and `datum` must point to `N` writable values.
enum QflagStatus qflag_basis_flag_minor(const struct QflagBasis *b, uintptr_t k, int64_t *datum);

// Renders the dual canonical element `B(m)*` as an expression in the `E_i`.
//
// # Safety
// `b` must be a live basis, `datum` must point to `len` values and `out` must be
// writable.
enum QflagStatus qflag_basis_element(const struct QflagBasis *b,
                                     const int64_t *datum,
                                     uintptr_t len,
                                     char **out);

// Expands an expression such as "E1*E2 - q^-1*E2*E1" in the PBW basis, or the
// dual PBW basis when `dual` is set, as a JSON object mapping data to
// coefficients.
//
// # Safety
// `b` must be a live basis, `expr` a NUL-terminated string and `out` writable.
enum QflagStatus qflag_basis_coordinates(const struct QflagBasis *b,
                                         const char *expr,
                                         bool dual,
                                         char **out);

// Runs a command-line invocation in memory, e.g. `{"check", "prop41", "--type",
// "A2", "--orientation", "2>1"}`, and returns its rendered output. Returns
// `Violations` when a check found violations; the output is written either way.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings and `out` must be writable.
enum QflagStatus qflag_run(const char *const *argv, uintptr_t argc, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFLAG_H */
