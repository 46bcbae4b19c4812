// Copyright 2026 The Exosort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exosort/costmodel.hpp"

#include <cmath>

#include "exosort/common.hpp"

namespace exosort {

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

double hourly_compute_cost(const PricingConfig& cfg) {
  double ebs_hourly =
      round4(cfg.ebs_monthly_per_gib / cfg.hours_per_month * cfg.ebs_gib_per_node);
  return round4(cfg.master_hourly + cfg.worker_hourly * cfg.worker_count +
                ebs_hourly * (cfg.worker_count + 1));
}

StorageCost storage_cost(double data_tb, double jct_hours, double reduce_hours,
                         const PricingConfig& cfg) {
  if (jct_hours < 0 || reduce_hours < 0)
    throw ConfigError("durations must be non-negative");
  StorageCost c;
  c.hourly_rate = round4(cfg.s3_gb_month * 1000.0 / cfg.hours_per_month * data_tb);
  c.input_cost = round4(c.hourly_rate * round4(jct_hours));
  c.output_cost = round4(c.hourly_rate * round4(reduce_hours));
  return c;
}

std::uint64_t requests_per_task(std::uint64_t partition_bytes,
                                std::uint64_t chunk_bytes,
                                RequestFormula formula) {
  if (chunk_bytes == 0) throw ConfigError("chunk size must be positive");
  if (formula == RequestFormula::kPaper) {
    // trunc(size/chunk + 1)
    return partition_bytes / chunk_bytes + 1;
  }
  if (partition_bytes == 0) return 1;
  return (partition_bytes + chunk_bytes - 1) / chunk_bytes;
}

AccessCost access_cost(const CostGeometry& g, const PricingConfig& cfg,
                       RequestFormula formula) {
  AccessCost c;
  c.get_requests_per_task =
      requests_per_task(g.input_partition_bytes, g.get_chunk_bytes, formula);
  c.put_requests_per_task =
      requests_per_task(g.output_partition_bytes, g.put_part_bytes, formula);
  c.get_requests = c.get_requests_per_task * g.map_tasks;
  c.put_requests = c.put_requests_per_task * g.reduce_tasks;
  c.get_cost = round4(cfg.get_price_per_1000 / 1000.0 *
                      static_cast<double>(c.get_requests));
  c.put_cost = round4(cfg.put_price_per_1000 / 1000.0 *
                      static_cast<double>(c.put_requests));
  return c;
}

CostReport total_cost(const PricingConfig& cfg, double jct_hours,
                      double reduce_hours, const CostGeometry& g,
                      RequestFormula formula) {
  CostReport r;
  r.jct_hours = round4(jct_hours);
  r.reduce_hours = round4(reduce_hours);
  r.hourly_compute = hourly_compute_cost(cfg);
  r.compute = round4(r.hourly_compute * r.jct_hours);
  StorageCost storage = storage_cost(g.data_tb, r.jct_hours, r.reduce_hours, cfg);
  r.storage_hourly_rate = storage.hourly_rate;
  r.storage_input = storage.input_cost;
  r.storage_output = storage.output_cost;
  AccessCost access = access_cost(g, cfg, formula);
  r.get_requests = access.get_requests;
  r.put_requests = access.put_requests;
  r.access_get = access.get_cost;
  r.access_put = access.put_cost;
  r.get_price_per_1000 = cfg.get_price_per_1000;
  r.put_price_per_1000 = cfg.put_price_per_1000;
  r.total = r.compute + r.storage_input + r.storage_output + r.access_get +
            r.access_put;
  return r;
}

CostReport cost_of_run(const PricingConfig& cfg, double jct_seconds,
                       double reduce_seconds, double data_tb,
                       std::uint64_t get_requests, std::uint64_t put_requests) {
  CostReport r;
  r.jct_hours = round4(jct_seconds / 3600.0);
  r.reduce_hours = round4(reduce_seconds / 3600.0);
  r.hourly_compute = hourly_compute_cost(cfg);
  r.compute = round4(r.hourly_compute * r.jct_hours);
  StorageCost storage = storage_cost(data_tb, r.jct_hours, r.reduce_hours, cfg);
  r.storage_hourly_rate = storage.hourly_rate;
  r.storage_input = storage.input_cost;
  r.storage_output = storage.output_cost;
  r.get_requests = get_requests;
  r.put_requests = put_requests;
  r.access_get = round4(cfg.get_price_per_1000 / 1000.0 *
                        static_cast<double>(get_requests));
  r.access_put = round4(cfg.put_price_per_1000 / 1000.0 *
                        static_cast<double>(put_requests));
  r.get_price_per_1000 = cfg.get_price_per_1000;
  r.put_price_per_1000 = cfg.put_price_per_1000;
  r.total = r.compute + r.storage_input + r.storage_output + r.access_get +
            r.access_put;
  return r;
}

double lower_bound_jct_seconds(double total_gb, double workers,
                               double disk_read_gb_s, double disk_write_gb_s,
                               double net_gb_s) {
  if (workers <= 0) throw ConfigError("worker count must be positive");
  if (disk_read_gb_s <= 0 || disk_write_gb_s <= 0 || net_gb_s <= 0)
    throw ConfigError("bandwidths must be positive");
  return total_gb / workers *
         (1.0 / disk_read_gb_s + 1.0 / disk_write_gb_s + 2.0 / net_gb_s);
}

std::string format_cost_table(const CostReport& r) {
  std::string out;
  auto row = [&out](const std::string& service, const std::string& unit,
                    const std::string& amount, const std::string& total) {
    out += strformat("%-24s %-22s %-20s %s\n", service.c_str(), unit.c_str(),
                     amount.c_str(), total.c_str());
  };
  row("Service", "Unit Price", "Amount", "Total Price");
  out += std::string(78, '-') + "\n";
  row("Compute VM Cluster", strformat("$%.4f / hr", r.hourly_compute),
      strformat("%.4f hours", r.jct_hours), strformat("$%.4f", r.compute));
  row("Data Storage (Input)", strformat("$%.4f / hr", r.storage_hourly_rate),
      strformat("%.4f hours", r.jct_hours),
      strformat("$%.4f", r.storage_input));
  row("Data Storage (Output)", strformat("$%.4f / hr", r.storage_hourly_rate),
      strformat("%.4f hours", r.reduce_hours),
      strformat("$%.4f", r.storage_output));
  row("Data Access (Input)",
      strformat("$%.4f / 1000 requests", r.get_price_per_1000),
      strformat("%llu requests", static_cast<unsigned long long>(r.get_requests)),
      strformat("$%.4f", r.access_get));
  row("Data Access (Output)",
      strformat("$%.4f / 1000 requests", r.put_price_per_1000),
      strformat("%llu requests", static_cast<unsigned long long>(r.put_requests)),
      strformat("$%.4f", r.access_put));
  out += std::string(78, '-') + "\n";
  row("Total", "--", "--",
      strformat("$%.4f (~$%.0f)", r.total, std::round(r.total)));
  return out;
}

}  // namespace exosort
