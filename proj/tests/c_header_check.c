/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/geoderelict.h"

int geoderelict_c_header_check(void)
{
    gd_sample sample = {0};
    gd_status status = GD_OK;
    gd_well_kind kind = GD_PRODUCER;
    (void)sample;
    return (int)status + (int)kind;
}
