/* C interface to the network-algebra kernel. All functions return BNA_OK or
 * an error code; bna_last_error() gives a message for the most recent failure
 * on the calling thread. Strings returned through out-parameters are owned by
 * the caller and released with bna_string_free. */
#ifndef BNA_C_H
#define BNA_C_H

#ifdef __cplusplus
extern "C" {
#endif

enum bna_status {
  BNA_OK = 0,
  BNA_ERR_SYNTAX = 1,      /* term text or stream file malformed */
  BNA_ERR_SORT = 2,        /* composition sorts do not match */
  BNA_ERR_UNBOUND = 3,     /* cell not present in the environment */
  BNA_ERR_ENV = 4,         /* environment JSON malformed or inconsistent */
  BNA_ERR_BADSHAPE = 5,    /* operation preconditions violated */
  BNA_ERR_UNSUPPORTED = 6, /* constant without a reading in this model */
  BNA_ERR_RUNTIME = 7,     /* evaluation failed (e.g. slot collision) */
  BNA_ERR_INVAL = 8        /* null handle or argument out of range */
};

enum bna_model {
  BNA_MODEL_REL = 0,
  BNA_MODEL_STREAM = 1,
  BNA_MODEL_PROC = 2
};

typedef struct bna_env bna_env;
typedef struct bna_term bna_term;

/* Message for the last failing call on this thread; empty string if none. */
const char* bna_last_error(void);

void bna_string_free(char* s);

/* --- environments ------------------------------------------------------- */

int bna_env_parse(const char* json_text, bna_env** out);
/* The built-in harness environment over a domain of the given size (>= 1). */
int bna_env_default(unsigned domain_size, bna_env** out);
void bna_env_free(bna_env* env);

/* --- terms --------------------------------------------------------------- */

int bna_term_parse(const char* text, bna_term** out);
void bna_term_free(bna_term* t);
int bna_term_print(const bna_term* t, char** out_text);
/* env may be NULL when the term uses no cells. */
int bna_term_sort(const bna_term* t, const bna_env* env, unsigned* inputs, unsigned* outputs);
/* Regular grid of k*(k-1) + (l-k+1)*k copies of `cell`, sort k -> l. */
int bna_term_regular(unsigned k, unsigned l, const char* cell, bna_term** out);

/* --- normal form --------------------------------------------------------- */

/* Any out-parameter may be NULL. total_cells counts all normal-form atoms,
 * named_cells excludes the reserved constant atoms. */
int bna_normalize(const bna_term* t, const bna_env* env, char** out_text,
                  unsigned* total_cells, unsigned* named_cells);
int bna_iso(const bna_term* a, const bna_term* b, const bna_env* env, int* iso_out);

/* --- evaluation ---------------------------------------------------------- */

/* streams_text may be NULL for all-tick inputs. model is BNA_MODEL_STREAM or
 * BNA_MODEL_PROC. Output uses the stream-file format, one line per port. */
int bna_eval(const bna_term* t, const bna_env* env, const char* streams_text,
             unsigned ticks, int model, char** out_streams);
/* Process-simulator run that also returns the event log (may pass NULL). */
int bna_simulate(const bna_term* t, const bna_env* env, const char* streams_text,
                 unsigned ticks, char** out_streams, char** out_events);

/* --- axiom harness ------------------------------------------------------- */

/* env NULL selects the built-in environment for domain_size. table: 0 = all,
 * otherwise 1, 2 or 3. Report is one header line plus one line per axiom;
 * failures receives the number of FAIL lines. */
int bna_axioms(const bna_env* env, int model, int table, unsigned trials,
               unsigned long long seed, unsigned domain_size, unsigned ticks,
               char** out_report, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* BNA_C_H */
