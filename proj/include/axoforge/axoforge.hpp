#pragma once

// Umbrella header for the axoforge library.

#include <axoforge/cli.hpp>
#include <axoforge/color.hpp>
#include <axoforge/compat.hpp>
#include <axoforge/geom.hpp>
#include <axoforge/model.hpp>
#include <axoforge/parser.hpp>
#include <axoforge/pdf.hpp>
#include <axoforge/stroker.hpp>
#include <axoforge/svg.hpp>
