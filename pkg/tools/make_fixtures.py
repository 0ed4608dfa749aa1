"""Regenerate the bundled fixture corpus and function-word rates.

Run from the repository root: ``python tools/make_fixtures.py``.
"""

import json
from pathlib import Path

from unithood.counts import build_local_index, measure_function_word_rates

DATA = Path(__file__).resolve().parents[1] / "src" / "unithood" / "data"

DOCS = [
    "The National Institute of Allergy and Infectious Diseases is funding a new vaccine trial.",
    "Officials at the National Institute of Allergy and Infectious Diseases said the trial with volunteers is on schedule.",
    "A spokesman for the National Institute of Allergy and Infectious Diseases declined to comment.",
    "Allergy and infectious diseases research is a priority, the National Institute said.",
    "The National Institute of Allergy and Infectious Diseases is part of the National Institutes of Health.",
    "Infectious diseases spread quickly in crowded camps with poor sanitation.",
    "Doctors warn that infectious diseases such as measles are returning.",
    "An allergy to peanuts is common in children, a new study with 2,000 families said.",
    "Seasonal allergy symptoms are worse this year, according to a survey.",
    "E. coli food poisoning sickened dozens of diners at a restaurant in Ohio.",
    "Health officials traced the E. coli food poisoning outbreak to bagged spinach.",
    "The E. coli food poisoning case is under investigation by state inspectors.",
    "An E. coli outbreak linked to ground beef is spreading, officials said.",
    "E. coli bacteria live in the intestines of people and animals.",
    "Food poisoning is a common illness during the summer months.",
    "A food poisoning report from the agency found that most cases go unreported.",
    "Salmonella food poisoning is linked to undercooked eggs and chicken.",
    "The food supply is safe, the agency said in a statement on Friday.",
    "Inspectors with the food safety agency visited the plant and found E. coli in samples.",
    "The food safety agency is reviewing rules on bagged salad.",
    "Bird flu vaccine trials with human volunteers began in Vietnam.",
    "A bird flu vaccine is still years away, experts said.",
    "Cases of bird flu in poultry were reported in Indonesia and Egypt.",
    "The flu season peaked early this year in the United States.",
    "A vaccine for the flu is recommended for the elderly and for children.",
    "Heart disease is the leading cause of death in the United States.",
    "Patients with heart disease should exercise with care, the study said.",
    "The risk of heart attack is higher in smokers.",
    "Breast cancer screening with mammograms saves lives, a panel said.",
    "Breast cancer rates fell after women stopped hormone therapy.",
    "Lung cancer is the deadliest form of cancer in men and women.",
    "Cancer research funding is flat this year, a report said.",
    "The World Health Organization is tracking a new strain of tuberculosis.",
    "World Health Organization officials met with ministers in Geneva.",
    "Drug resistant tuberculosis is a growing threat in Africa.",
    "The drug company is recalling a blood pressure medicine.",
    "High blood pressure is a risk factor for stroke and heart disease.",
    "Blood pressure readings at home are a useful guide for doctors.",
    "A clinical trial of the new drug is enrolling patients with diabetes.",
    "Type 2 diabetes is linked to obesity and a lack of exercise.",
    "Childhood obesity rates are rising with the spread of fast food.",
    "Fast food chains are adding calorie counts to menus.",
    "The health minister said hospital waiting lists are shorter.",
    "Hospital infections with drug resistant bacteria are a concern.",
    "Mental health services for teenagers are underfunded, a review said.",
    "The review of mental health care is due in May.",
    "Public health officials urged people to wash hands with soap.",
    "Hand washing with soap is a simple way to stop infections.",
    "A measles outbreak in the city is linked to low vaccination rates.",
    "Vaccination rates in the region are the lowest in a decade.",
    "The agency is a member of the global network for infectious disease surveillance.",
    "Food poisoning with E. coli is most dangerous for young children.",
    "Researchers from the institute are studying allergy and asthma in children.",
    "Asthma is a chronic disease of the airways.",
    "The national institute for health research is funding the trial.",
    "Diseases of the heart and lungs are a major cause of illness.",
    "A study of sleep and memory is a first for the university.",
    "Sleep loss is linked to weight gain, a study said.",
    "The drug was approved for use in children with asthma.",
    "Doctors with the aid group are treating cholera patients in Haiti.",
]

TAGGED = [
    ("nih", "The/DT National/NNP Institute/NNP of/IN Allergy/NNP and/CC Infectious/NNP "
            "Diseases/NNPS is/VBZ funding/VBG a/DT new/JJ vaccine/NN trial/NN ./."),
    ("ecoli", "E./NNP coli/NNP food/NN poisoning/NN sickened/VBD dozens/NNS of/IN diners/NNS "
              "at/IN a/DT restaurant/NN in/IN Ohio/NNP ./."),
    ("inspect", "Inspectors/NNS with/IN the/DT food/NN safety/NN agency/NN visited/VBD the/DT "
                "plant/NN and/CC found/VBD E./NNP coli/NNP in/IN samples/NNS ./."),
    ("breast", "Breast/NN cancer/NN screening/NN with/IN mammograms/NNS saves/VBZ lives/NNS ,/, "
               "a/DT panel/NN said/VBD ./."),
    ("bp", "High/JJ blood/NN pressure/NN is/VBZ a/DT risk/NN factor/NN for/IN stroke/NN and/CC "
           "heart/NN disease/NN ./."),
    ("who", "The/DT World/NNP Health/NNP Organization/NNP is/VBZ tracking/VBG a/DT new/JJ "
            "strain/NN of/IN tuberculosis/NN ./."),
    ("tb", "Drug/NN resistant/JJ tuberculosis/NN is/VBZ a/DT growing/VBG threat/NN in/IN "
           "Africa/NNP ./."),
    ("birdflu1", "Bird/NN flu/NN vaccine/NN trials/NNS with/IN human/JJ volunteers/NNS began/VBD "
                 "in/IN Vietnam/NNP ./."),
    ("birdflu2", "Cases/NNS of/IN bird/NN flu/NN in/IN poultry/NN were/VBD reported/VBN in/IN "
                 "Indonesia/NNP and/CC Egypt/NNP ./."),
    ("mental", "Mental/JJ health/NN services/NNS for/IN teenagers/NNS are/VBP underfunded/JJ ,/, "
               "a/DT review/NN said/VBD ./."),
    ("soap1", "Public/JJ health/NN officials/NNS urged/VBD people/NNS to/TO wash/VB hands/NNS "
              "with/IN soap/NN ./."),
    ("soap2", "Hand/NN washing/NN with/IN soap/NN is/VBZ a/DT simple/JJ way/NN to/TO stop/VB "
              "infections/NNS ./."),
    ("obesity", "Childhood/NN obesity/NN rates/NNS are/VBP rising/VBG with/IN the/DT spread/NN "
                "of/IN fast/JJ food/NN ./."),
    ("heart", "Heart/NN disease/NN is/VBZ the/DT leading/VBG cause/NN of/IN death/NN in/IN "
              "the/DT United/NNP States/NNPS ./."),
    ("asthma", "Researchers/NNS from/IN the/DT institute/NN are/VBP studying/VBG allergy/NN "
               "and/CC asthma/NN in/IN children/NNS ./."),
    ("lung", "Lung/NN cancer/NN is/VBZ the/DT deadliest/JJS form/NN of/IN cancer/NN in/IN "
             "men/NNS and/CC women/NNS ./."),
    ("outbreak", "An/DT E./NNP coli/NNP outbreak/NN linked/VBN to/TO ground/NN beef/NN is/VBZ "
                 "spreading/VBG ./."),
    ("salmonella", "Salmonella/NNP food/NN poisoning/NN is/VBZ linked/VBN to/TO undercooked/JJ "
                   "eggs/NNS and/CC chicken/NN ./."),
]

# Hand-assigned: should the two units form one lexical unit?
GOLD = {
    ("national institute", "of", "allergy"): True,
    ("allergy", "and", "infectious diseases"): True,
    ("national institute", "of", "allergy and infectious diseases"): True,
    ("e. coli", "", "food poisoning"): True,
    ("dozens", "of", "diners"): False,
    ("restaurant", "in", "ohio"): False,
    ("e. coli", "in", "samples"): False,
    ("breast cancer screening", "with", "mammograms"): False,
    ("risk factor", "for", "stroke"): False,
    ("stroke", "and", "heart disease"): False,
    ("new strain", "of", "tuberculosis"): False,
    ("drug", "", "resistant tuberculosis"): False,
    ("threat", "in", "africa"): False,
    ("bird flu vaccine trials", "with", "human volunteers"): False,
    ("cases", "of", "bird flu"): False,
    ("bird flu", "in", "poultry"): False,
    ("indonesia", "and", "egypt"): False,
    ("mental health services", "for", "teenagers"): False,
    ("hands", "with", "soap"): False,
    ("hand washing", "with", "soap"): False,
    ("spread", "of", "fast food"): False,
    ("cause", "of", "death"): True,
    ("allergy", "and", "asthma"): False,
    ("asthma", "in", "children"): False,
    ("deadliest form", "of", "cancer"): False,
    ("cancer", "in", "men"): False,
    ("men", "and", "women"): False,
    ("e. coli", "", "outbreak"): False,
    ("salmonella", "", "food poisoning"): True,
    ("undercooked eggs", "and", "chicken"): False,
}

FUNCTION_WORDS = ["the", "a", "is", "with", "of", "and", "in", "for", "to", "said"]


def main():
    docs = [(f"d{i:03d}", text) for i, text in enumerate(DOCS, 1)]
    with open(DATA / "health_corpus.jsonl", "w", encoding="utf-8") as f:
        for doc_id, text in docs:
            f.write(json.dumps({"id": doc_id, "text": text}) + "\n")
    index = build_local_index(docs)
    rates = measure_function_word_rates(index, FUNCTION_WORDS)
    with open(DATA / "function_word_rates.json", "w", encoding="utf-8") as f:
        json.dump({"source": "health_corpus.jsonl", "documents": index.doc_count,
                   "rates": rates}, f, indent=2)
        f.write("\n")
    with open(DATA / "tagged.tsv", "w", encoding="utf-8") as f:
        for sid, text in TAGGED:
            f.write(f"# sid: {sid}\n")
            for i, item in enumerate(text.split()):
                word, tag = item.rsplit("/", 1)
                f.write(f"{i}\t{word}\t{tag}\n")
            f.write("\n")
    with open(DATA / "gold.jsonl", "w", encoding="utf-8") as f:
        for (ax, b, ay), merge in GOLD.items():
            f.write(json.dumps({"ax": ax, "b": b, "ay": ay, "merge": merge}) + "\n")
    with open(DATA / "corpus3.jsonl", "w", encoding="utf-8") as f:
        for doc_id, text in [("d1", "E coli food poisoning"), ("d2", "E coli outbreak"),
                             ("d3", "food poisoning report")]:
            f.write(json.dumps({"id": doc_id, "text": text}) + "\n")
    print(index.doc_count, rates)


if __name__ == "__main__":
    main()
