/* Copyright 2026 The dephasing Authors
 * SPDX-License-Identifier: Apache-2.0 */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "dephasing.h"

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);       \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  DphModel *model = NULL;
  double value = 0.0;
  char message[128];

  EXPECT(strlen(dph_version()) > 0);
  EXPECT(dph_model_new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0, &model) == DPH_STATUS_OK);
  EXPECT(dph_p_x(model, 1.0, &value) == DPH_STATUS_OK);
  EXPECT(fabs(value - sqrt(0.5)) < 1e-15);
  EXPECT(dph_c_x(model, 1.0, &value) == DPH_STATUS_OK);
  EXPECT(fabs(value - 0.5) < 1e-15);

  double times[3] = {0.0, 1.0, 10.0};
  double p[3], c[3];
  EXPECT(dph_eval_series(model, times, 3, p, c) == DPH_STATUS_OK);
  EXPECT(p[0] == 1.0 && c[0] == 1.0);
  EXPECT(fabs(c[2] - 1.0 / 101.0) < 1e-15);

  EXPECT(dph_crossover_time(model, DPH_CROSSOVER_OHMIC_ODD_A, &value) == DPH_STATUS_OK);
  EXPECT(isinf(value));
  dph_model_free(model);

  model = NULL;
  EXPECT(dph_model_new(1.0, 1.0, 1.0, 0.5, 0.0, 0.0, &model) == DPH_STATUS_OK);
  EXPECT(dph_p_x(model, 1.0, &value) == DPH_STATUS_OK);
  EXPECT(fabs(value - 0.8234857367423516) < 1e-13);
  dph_model_free(model);

  EXPECT(dph_model_new(1.0, 1.0, -1.0, 0.0, 0.0, 0.0, &model) == DPH_STATUS_DOMAIN);
  EXPECT(dph_last_error_message(message, sizeof message) > 1);
  EXPECT(strlen(message) > 0);
  EXPECT(dph_p_x(NULL, 1.0, &value) == DPH_STATUS_NULL_POINTER);

  puts("ok");
  return 0;
}
