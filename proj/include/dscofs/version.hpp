#pragma once

#define DSCOFS_VERSION "0.1.0"
