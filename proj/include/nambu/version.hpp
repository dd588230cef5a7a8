#pragma once

#define NAMBU_VERSION "0.1.0"
