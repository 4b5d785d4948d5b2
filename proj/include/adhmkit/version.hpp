#pragma once

#define ADHMKIT_VERSION "0.1.0"
