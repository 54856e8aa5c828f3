#ifndef ORDLAB_ORDLAB_H
#define ORDLAB_ORDLAB_H

/* C interface to the ordlab library. Every call returning ordlab_status
 * leaves a message retrievable with ordlab_last_error() on failure; the
 * message is per thread. Objects returned through out-pointers are owned by
 * the caller and released with the matching _free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ORDLAB_API __declspec(dllexport)
#else
#define ORDLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ordlab_status {
  ORDLAB_OK = 0,
  ORDLAB_E_SYNTAX = 1,
  ORDLAB_E_RANGE = 2,
  ORDLAB_E_OVERFLOW = 3,
  ORDLAB_E_LEAF = 4,
  ORDLAB_E_DOMAIN = 5,
  ORDLAB_E_BUDGET = 6,
  ORDLAB_E_IO = 7,
  ORDLAB_E_CORRUPT = 8,
  ORDLAB_E_USAGE = 9,
  ORDLAB_E_INTERNAL = 10
} ordlab_status;

typedef enum ordlab_format {
  ORDLAB_FORMAT_TEXT = 0,
  ORDLAB_FORMAT_CSV = 1,
  ORDLAB_FORMAT_DOT = 2
} ordlab_format;

typedef struct ordlab_ordinal ordlab_ordinal;
typedef struct ordlab_colouring ordlab_colouring;
typedef struct ordlab_report ordlab_report;

ORDLAB_API const char* ordlab_version(void);
ORDLAB_API const char* ordlab_last_error(void);
ORDLAB_API const char* ordlab_status_name(ordlab_status s);

/* Ordinals below w^w. */
ORDLAB_API ordlab_status ordlab_ordinal_parse(const char* literal,
                                              ordlab_ordinal** out);
ORDLAB_API void ordlab_ordinal_free(ordlab_ordinal* a);
/* Returns a string owned by the ordinal. */
ORDLAB_API const char* ordlab_ordinal_literal(const ordlab_ordinal* a);
ORDLAB_API int ordlab_ordinal_compare(const ordlab_ordinal* a,
                                      const ordlab_ordinal* b);
ORDLAB_API uint32_t ordlab_ordinal_cb_rank(const ordlab_ordinal* a);
ORDLAB_API ordlab_status ordlab_ordinal_add(const ordlab_ordinal* a,
                                            const ordlab_ordinal* b,
                                            ordlab_ordinal** out);
ORDLAB_API int ordlab_tree_le(const ordlab_ordinal* beta,
                              const ordlab_ordinal* alpha);

/* Colourings. */
ORDLAB_API ordlab_status ordlab_colouring_builtin(const char* name,
                                                  ordlab_colouring** out);
/* Colour-1 graph given as an edge list, one pair of literals per line. */
ORDLAB_API ordlab_status ordlab_colouring_from_edges(const char* text,
                                                     ordlab_colouring** out);
/* Copy of base with the listed pairs flipped. */
ORDLAB_API ordlab_status ordlab_colouring_toggle(const ordlab_colouring* base,
                                                 const char* edge_text,
                                                 ordlab_colouring** out);
ORDLAB_API ordlab_status ordlab_colouring_from_tables(const char* tables_text,
                                                      uint32_t threshold,
                                                      ordlab_colouring** out);
ORDLAB_API ordlab_status ordlab_colouring_restrict(const ordlab_colouring* base,
                                                   const ordlab_ordinal* bound,
                                                   ordlab_colouring** out);
ORDLAB_API void ordlab_colouring_free(ordlab_colouring* c);
ORDLAB_API const char* ordlab_colouring_name(const ordlab_colouring* c);
ORDLAB_API const char* ordlab_colouring_provenance(const ordlab_colouring* c);
ORDLAB_API ordlab_status ordlab_colour(const ordlab_colouring* c,
                                       const ordlab_ordinal* a,
                                       const ordlab_ordinal* b, int* out);

/* Parameters shared by the commands. Negative values mean "default". */
typedef struct ordlab_options {
  int32_t max_exp;
  int32_t max_coeff;
  int32_t k;
  int32_t p;
  int32_t q;
  int32_t limit_rank_max;
  int32_t deficiency;
  int32_t threshold;
  uint32_t threads;       /* 0: one per logical core */
  uint64_t seed;
  const char* cache_dir;  /* NULL: no adjacency cache */
  const char* tables_text;
  const char* a;          /* edge */
  const char* b;
  int32_t rank;           /* enumerate: filter by CB rank */
  const char* root;       /* export-tree */
  int32_t depth;
  int32_t fanout;
} ordlab_options;

ORDLAB_API void ordlab_options_init(ordlab_options* o);

/* Runs one of: check-triangles, check-lowerbound, search-witness, audit,
 * extract-tables, extract-upper, edge, enumerate, export-tree. The
 * colouring may be NULL for commands that do not use one. */
ORDLAB_API ordlab_status ordlab_run(const char* command,
                                    const ordlab_colouring* col,
                                    const ordlab_options* options,
                                    ordlab_report** out);

ORDLAB_API void ordlab_report_free(ordlab_report* r);
/* 0 when the checked property holds, 1 otherwise. */
ORDLAB_API int ordlab_report_exit_code(const ordlab_report* r);
/* Rendered document, owned by the report. */
ORDLAB_API ordlab_status ordlab_report_render(ordlab_report* r,
                                              ordlab_format format,
                                              const char** text);
/* Adjacency cache files touched by the run, newline separated. */
ORDLAB_API const char* ordlab_report_cache_keys(const ordlab_report* r);
ORDLAB_API double ordlab_report_wall_seconds(const ordlab_report* r);

/* FNV-1a 64 of a byte string, as 16 lowercase hex digits into buf[17]. */
ORDLAB_API void ordlab_digest(const char* bytes, size_t len, char buf[17]);

#ifdef __cplusplus
}
#endif

#endif
