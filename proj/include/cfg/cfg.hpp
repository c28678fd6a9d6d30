/* cfg.hpp -- umbrella header for libcfg */

#ifndef CFG_CFG_HPP
#define CFG_CFG_HPP

#include "cfg/closure.hpp"
#include "cfg/decide.hpp"
#include "cfg/grammar.hpp"
#include "cfg/pumping.hpp"
#include "cfg/text.hpp"
#include "cfg/transform.hpp"
#include "cfg/tree.hpp"

#endif // CFG_CFG_HPP
