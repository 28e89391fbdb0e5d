#ifndef HOCAT_H
#define HOCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Document kinds, mirroring the `kind` field of the JSON format.
 */
typedef enum HocatKind {
  HocatKindSset = 0,
  HocatKindFincat = 1,
  HocatKindScat = 2,
  HocatKindBisset = 3,
  HocatKindNsset = 4,
  HocatKindHammock = 5,
  HocatKindLocpair = 6,
} HocatKind;

/**
 * Status codes shared by every entry point.  `Ok` and `Fail` are the two
 * successful outcomes of a property check: the property holds, or it
 * fails and a witness is available.  The remaining codes are errors.
 */
typedef enum HocatStatus {
  HocatOk = 0,
  HocatFail = 1,
  HocatInvalid = 2,
  HocatPrecondition = 3,
  HocatInfinite = 4,
  HocatBudget = 5,
  HocatNullArgument = 6,
} HocatStatus;

/**
 * Opaque handle to a parsed document.
 */
typedef struct HocatDocument HocatDocument;

/**
 * Message of the most recent failure on this thread.  The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *hocat_last_error(void);

/**
 * Releases a string returned by this library.  NULL is ignored.
 */
void hocat_string_free(char *s);

/**
 * Parses a UTF-8 JSON document.  On success `*out` owns a new handle.
 */
enum HocatStatus hocat_document_parse(const char *text, struct HocatDocument **out);

/**
 * Releases a document handle.  NULL is ignored.
 */
void hocat_document_free(struct HocatDocument *d);

/**
 * Kind of the document behind a handle.  NULL maps to sset; check the
 * handle before calling.
 */
enum HocatKind hocat_document_kind(const struct HocatDocument *d);

/**
 * Canonical serialization of the document: identical handles emit
 * byte-identical text.  Returns NULL only for a NULL handle.
 */
char *hocat_document_emit(const struct HocatDocument *d);

/**
 * Full semantic validation of the payload: ids resolve, simplicial and
 * category identities hold.
 */
enum HocatStatus hocat_document_validate(const struct HocatDocument *d);

/**
 * Nerve of a fincat document, truncated at `max_dim`; `*out` owns the
 * resulting sset document.
 */
enum HocatStatus hocat_nerve(const struct HocatDocument *d,
                             uint32_t max_dim,
                             struct HocatDocument **out);

/**
 * Kan check on an sset document up to `max_dim`.  `Fail` means some horn
 * has no filler; if `witness` is non-NULL it receives the failing horn
 * as a JSON string.
 */
enum HocatStatus hocat_is_kan(const struct HocatDocument *d,
                              uint32_t max_dim,
                              uint64_t budget_limit,
                              char **witness);

/**
 * Inner-horn check on an sset document up to `max_dim`, with the same
 * conventions as `hocat_is_kan`.
 */
enum HocatStatus hocat_is_quasicategory(const struct HocatDocument *d,
                                        uint32_t max_dim,
                                        uint64_t budget_limit,
                                        char **witness);

/**
 * Strict Segal check on an sset document, all p up to the document's
 * dimension.  `Fail` leaves the failing level in the error message.
 */
enum HocatStatus hocat_is_strict_segal(const struct HocatDocument *d);

/**
 * Fundamental category of a quasi-category document; `*out` owns the
 * resulting fincat document.
 */
enum HocatStatus hocat_ho_category(const struct HocatDocument *d,
                                   uint64_t budget_limit,
                                   struct HocatDocument **out);

/**
 * Number of path components of an sset document, written to `*out`.
 */
enum HocatStatus hocat_pi0_count(const struct HocatDocument *d, uint64_t *out);

#endif  /* HOCAT_H */
